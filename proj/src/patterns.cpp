#include "r58/patterns.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace r58 {

std::string BadPattern::name() const {
  std::string s(1, type);
  if (variant > 0) s += std::to_string(variant);
  return s;
}

const std::vector<BadPattern>& catalog() {
  constexpr int i = kSlotI, l = kSlotL, m = kSlotM;
  static const std::vector<BadPattern> patterns = {
      // alternating C4
      {'a', 0, 4, 2, {{0, 1, l}, {1, 2, i}, {2, 3, l}, {3, 0, i}}},
      // alternating C5: i on a path and a disjoint edge, l on a matching
      {'b', 0, 5, 2, {{0, 1, i}, {4, 0, l}, {2, 3, l}, {3, 4, i}, {1, 2, i}}},
      // Q: 2-colored triangle 012 plus matchings in l and m
      {'c', 0, 5, 3, {{0, 1, i}, {1, 2, i}, {0, 2, l}, {4, 3, l}, {2, 3, m}, {4, 1, m}}},
      // one matching, two paths
      {'d', 1, 5, 3, {{0, 1, i}, {1, 2, i}, {1, 4, l}, {3, 4, l}, {2, 3, m}, {4, 0, m}}},
      {'d', 2, 5, 3, {{0, 1, i}, {1, 2, i}, {0, 4, l}, {3, 4, l}, {1, 4, m}, {2, 3, m}}},
      {'d', 3, 5, 3, {{0, 1, i}, {1, 2, i}, {1, 4, l}, {1, 3, l}, {2, 3, m}, {4, 0, m}}},
      {'d', 4, 5, 3, {{0, 1, i}, {1, 2, i}, {0, 4, l}, {4, 3, l}, {1, 3, m}, {2, 4, m}}},
      // two matchings, one path
      {'e', 1, 5, 3, {{0, 1, i}, {1, 2, i}, {1, 4, l}, {0, 3, l}, {2, 3, m}, {4, 0, m}}},
      {'e', 2, 5, 3, {{0, 1, i}, {1, 2, i}, {0, 4, l}, {1, 3, l}, {2, 3, m}, {4, 1, m}}},
      // three matchings
      {'f', 1, 5, 3, {{0, 1, i}, {2, 3, i}, {1, 2, l}, {3, 4, l}, {1, 3, m}, {4, 0, m}}},
      {'f', 2, 5, 3, {{0, 1, i}, {2, 3, i}, {1, 2, l}, {3, 4, l}, {1, 4, m}, {3, 0, m}}},
  };
  return patterns;
}

std::vector<std::array<int, 3>> canonical_form(const BadPattern& p) {
  std::vector<std::array<int, 3>> best;
  std::array<int, 5> perm{0, 1, 2, 3, 4};
  do {
    std::array<int, 3> sigma{0, 1, 2};
    do {
      std::vector<std::array<int, 3>> form;
      for (const auto& pe : p.edges) {
        int a = perm[pe.x], b = perm[pe.y];
        form.push_back({std::min(a, b), std::max(a, b), sigma[pe.slot]});
      }
      std::sort(form.begin(), form.end());
      if (best.empty() || form < best) best = std::move(form);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<EdgeId> BadOccurrence::host_edges(int n) const {
  std::vector<EdgeId> out;
  for (const auto& pe : shape().edges) out.push_back(edge_index(vertices[pe.x], vertices[pe.y], n));
  return out;
}

std::tuple<char, std::vector<Vertex>, std::vector<Color>> BadOccurrence::key() const {
  auto vs = vertices;
  auto cs = colors;
  std::sort(vs.begin(), vs.end());
  std::sort(cs.begin(), cs.end());
  return {type, std::move(vs), std::move(cs)};
}

std::string BadOccurrence::to_line() const {
  std::ostringstream out;
  out << shape().name();
  for (Vertex v : vertices) out << ' ' << v;
  for (Color c : colors) out << ' ' << c;
  return out.str();
}

// ---------------------------------------------------------------------------

ColoredGraphIndex::ColoredGraphIndex(int n)
    : coloring_(n),
      matrix_(static_cast<std::size_t>(n) * n, kUncolored),
      adjacency_(static_cast<std::size_t>(n)) {
  endpoints_.reserve(static_cast<std::size_t>(edge_count(n)));
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) endpoints_.push_back({u, v});
  }
}

ColoredGraphIndex::ColoredGraphIndex(const Coloring& c) : ColoredGraphIndex(c.n()) {
  reserve_color(c.max_color());
  for (EdgeId e = 0; e < c.edges(); ++e) {
    if (c.at_edge(e) != kUncolored) assign(e, c.at_edge(e));
  }
}

void ColoredGraphIndex::reserve_color(Color c) {
  if (c < color_capacity_) return;
  const int cap = std::max({c + 1, 2 * color_capacity_, 8});
  std::vector<std::vector<Vertex>> grown(static_cast<std::size_t>(n()) * cap);
  for (int v = 0; v < n(); ++v) {
    for (int col = 0; col < color_capacity_; ++col) {
      grown[static_cast<std::size_t>(v) * cap + col] =
          std::move(by_color_[static_cast<std::size_t>(v) * color_capacity_ + col]);
    }
  }
  by_color_ = std::move(grown);
  class_edges_.resize(static_cast<std::size_t>(cap));
  color_capacity_ = cap;
}

void ColoredGraphIndex::erase_value(std::vector<int>& list, int value) {
  auto it = std::find(list.begin(), list.end(), value);
  if (it != list.end()) {
    *it = list.back();
    list.pop_back();
  }
}

void ColoredGraphIndex::assign(EdgeId e, Color c) {
  if (c == kUncolored) {
    unassign(e);
    return;
  }
  if (coloring_.at_edge(e) != kUncolored) unassign(e);
  reserve_color(c);
  auto [u, v] = endpoints_[e];
  const int nn = n();
  coloring_.set_edge(e, c);
  matrix_[u * nn + v] = c;
  matrix_[v * nn + u] = c;
  by_color_[static_cast<std::size_t>(u) * color_capacity_ + c].push_back(v);
  by_color_[static_cast<std::size_t>(v) * color_capacity_ + c].push_back(u);
  class_edges_[c].push_back(e);
  adjacency_[u].push_back(v);
  adjacency_[v].push_back(u);
}

void ColoredGraphIndex::unassign(EdgeId e) {
  const Color c = coloring_.at_edge(e);
  if (c == kUncolored) return;
  auto [u, v] = endpoints_[e];
  const int nn = n();
  coloring_.clear_edge(e);
  matrix_[u * nn + v] = kUncolored;
  matrix_[v * nn + u] = kUncolored;
  erase_value(by_color_[static_cast<std::size_t>(u) * color_capacity_ + c], v);
  erase_value(by_color_[static_cast<std::size_t>(v) * color_capacity_ + c], u);
  erase_value(class_edges_[c], e);
  erase_value(adjacency_[u], v);
  erase_value(adjacency_[v], u);
}

std::span<const Vertex> ColoredGraphIndex::neighbors(Vertex v, Color c) const {
  if (c < 0 || c >= color_capacity_) return {};
  return by_color_[static_cast<std::size_t>(v) * color_capacity_ + c];
}

std::span<const EdgeId> ColoredGraphIndex::class_edges(Color c) const {
  if (c < 0 || c >= color_capacity_) return {};
  return class_edges_[c];
}

// ---------------------------------------------------------------------------

namespace {

// Backtracking embedding of one pattern, expanding along the cheapest
// frontier step: a known-color edge from a placed vertex (bounded by the
// color degree), an unknown-color edge from a placed vertex (bounded by the
// colored degree), or a jump onto another edge of an already known class.
class EmbeddingSearch {
 public:
  EmbeddingSearch(const ColoredGraphIndex& g, int pattern, const OccurrenceVisitor& visit)
      : g_(g), index_(pattern), p_(catalog()[pattern]), visit_(visit) {
    map_.fill(-1);
    slot_.fill(kUncolored);
  }

  bool run_from(int pattern_edge, Vertex a, Vertex b) {
    const auto& pe = p_.edges[pattern_edge];
    int s1 = 0, s2 = 0;
    bool keep_going = true;
    if (place(pe.x, a, s1)) {
      if (place(pe.y, b, s2)) {
        keep_going = extend();
        unplace(pe.y, s2);
      }
      unplace(pe.x, s1);
    }
    return keep_going;
  }

 private:
  bool mapped(int pv) const { return map_[pv] >= 0; }

  // Maps pattern vertex pv to host vertex hv and checks every pattern edge
  // to already placed vertices. `fresh` receives the slots first fixed here.
  bool place(int pv, Vertex hv, int& fresh) {
    fresh = 0;
    for (int w = 0; w < p_.vertex_count; ++w) {
      if (map_[w] == hv) return false;
    }
    for (const auto& pe : p_.edges) {
      int other = pe.x == pv ? pe.y : (pe.y == pv ? pe.x : -1);
      if (other < 0 || !mapped(other)) continue;
      const Color col = g_.color(hv, map_[other]);
      bool ok = col != kUncolored;
      if (ok && slot_[pe.slot] != kUncolored) {
        ok = slot_[pe.slot] == col;
      } else if (ok) {
        for (int s = 0; s < p_.slot_count; ++s) ok &= slot_[s] != col;
        if (ok) {
          slot_[pe.slot] = col;
          fresh |= 1 << pe.slot;
        }
      }
      if (!ok) {
        clear_slots(fresh);
        fresh = 0;
        return false;
      }
    }
    map_[pv] = hv;
    ++placed_;
    return true;
  }

  void unplace(int pv, int fresh) {
    map_[pv] = -1;
    --placed_;
    clear_slots(fresh);
  }

  void clear_slots(int mask) {
    for (int s = 0; s < 3; ++s) {
      if (mask & (1 << s)) slot_[s] = kUncolored;
    }
  }

  bool try_vertex(int pv, Vertex hv) {
    int fresh = 0;
    if (!place(pv, hv, fresh)) return true;
    bool keep_going = extend();
    unplace(pv, fresh);
    return keep_going;
  }

  bool extend() {
    if (placed_ == p_.vertex_count) {
      BadOccurrence occ;
      occ.pattern = index_;
      occ.type = p_.type;
      occ.vertices.assign(map_.begin(), map_.begin() + p_.vertex_count);
      occ.colors.assign(slot_.begin(), slot_.begin() + p_.slot_count);
      return visit_(occ);
    }

    enum class Step { None, Known, Unknown, Jump };
    Step best = Step::None;
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    int best_new = -1, best_from = -1, best_edge = -1;
    for (int j = 0; j < static_cast<int>(p_.edges.size()); ++j) {
      const auto& pe = p_.edges[j];
      const bool mx = mapped(pe.x), my = mapped(pe.y);
      if (mx && my) continue;
      const Color known = slot_[pe.slot];
      if (mx != my) {
        const int from = mx ? pe.x : pe.y;
        const int fresh = mx ? pe.y : pe.x;
        const std::size_t cost = known != kUncolored ? g_.neighbors(map_[from], known).size()
                                                     : g_.colored_neighbors(map_[from]).size();
        if (cost < best_cost) {
          best_cost = cost;
          best = known != kUncolored ? Step::Known : Step::Unknown;
          best_new = fresh;
          best_from = from;
          best_edge = j;
        }
      } else if (known != kUncolored) {
        const std::size_t cost = 2 * g_.class_edges(known).size();
        if (cost < best_cost) {
          best_cost = cost;
          best = Step::Jump;
          best_edge = j;
        }
      }
    }

    switch (best) {
      case Step::Known: {
        const Color c = slot_[p_.edges[best_edge].slot];
        for (Vertex hv : g_.neighbors(map_[best_from], c)) {
          if (!try_vertex(best_new, hv)) return false;
        }
        return true;
      }
      case Step::Unknown: {
        for (Vertex hv : g_.colored_neighbors(map_[best_from])) {
          if (!try_vertex(best_new, hv)) return false;
        }
        return true;
      }
      case Step::Jump: {
        const auto& pe = p_.edges[best_edge];
        for (EdgeId e : g_.class_edges(slot_[pe.slot])) {
          auto [u, v] = g_.endpoints(e);
          for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
            int s1 = 0, s2 = 0;
            if (!place(pe.x, a, s1)) continue;
            bool keep_going = true;
            if (place(pe.y, b, s2)) {
              keep_going = extend();
              unplace(pe.y, s2);
            }
            unplace(pe.x, s1);
            if (!keep_going) return false;
          }
        }
        return true;
      }
      case Step::None: {
        // Disconnected remainder with no known color: try every host vertex.
        int pv = 0;
        while (mapped(pv)) ++pv;
        for (Vertex hv = 0; hv < g_.n(); ++hv) {
          if (!try_vertex(pv, hv)) return false;
        }
        return true;
      }
    }
    return true;
  }

  const ColoredGraphIndex& g_;
  int index_;
  const BadPattern& p_;
  const OccurrenceVisitor& visit_;
  std::array<Vertex, 5> map_{};
  std::array<Color, 3> slot_{};
  int placed_ = 0;
};

}  // namespace

bool for_each_occurrence_through(const ColoredGraphIndex& g, EdgeId e,
                                 const OccurrenceVisitor& visit) {
  if (g.coloring().at_edge(e) == kUncolored) return true;
  auto [u, v] = g.endpoints(e);
  const auto& cat = catalog();
  for (int p = 0; p < static_cast<int>(cat.size()); ++p) {
    EmbeddingSearch search(g, p, visit);
    for (int j = 0; j < static_cast<int>(cat[p].edges.size()); ++j) {
      if (!search.run_from(j, u, v)) return false;
      if (!search.run_from(j, v, u)) return false;
    }
  }
  return true;
}

std::optional<BadOccurrence> first_occurrence_through(const ColoredGraphIndex& g, EdgeId e) {
  std::optional<BadOccurrence> found;
  for_each_occurrence_through(g, e, [&](const BadOccurrence& occ) {
    found = occ;
    return false;
  });
  return found;
}

void canonicalize(std::vector<BadOccurrence>& occ) {
  std::sort(occ.begin(), occ.end(), [](const BadOccurrence& a, const BadOccurrence& b) {
    auto ka = a.key(), kb = b.key();
    if (ka != kb) return ka < kb;
    return std::tie(a.pattern, a.vertices, a.colors) < std::tie(b.pattern, b.vertices, b.colors);
  });
  occ.erase(std::unique(occ.begin(), occ.end(),
                        [](const BadOccurrence& a, const BadOccurrence& b) {
                          return a.key() == b.key();
                        }),
            occ.end());
}

std::vector<BadOccurrence> scan_bad(const Coloring& c) {
  ColoredGraphIndex g(c);
  std::vector<BadOccurrence> out;
  const auto& cat = catalog();
  auto collect = [&](const BadOccurrence& occ) {
    out.push_back(occ);
    return true;
  };
  for (int p = 0; p < static_cast<int>(cat.size()); ++p) {
    EmbeddingSearch search(g, p, collect);
    for (EdgeId e = 0; e < c.edges(); ++e) {
      if (c.at_edge(e) == kUncolored) continue;
      auto [u, v] = g.endpoints(e);
      search.run_from(0, u, v);
      search.run_from(0, v, u);
    }
  }
  canonicalize(out);
  return out;
}

std::vector<BadOccurrence> find_occurrences_in_window(const Coloring& c,
                                                      std::span<const Vertex> window) {
  std::vector<Vertex> w(window.begin(), window.end());
  std::sort(w.begin(), w.end());
  if (w.size() > 5) throw InputError("window must have at most 5 vertices");
  if (std::adjacent_find(w.begin(), w.end()) != w.end()) {
    throw InputError("window vertices must be distinct");
  }
  for (Vertex v : w) {
    if (v < 0 || v >= c.n()) throw InputError("window vertex out of range");
  }

  std::vector<BadOccurrence> out;
  const auto& cat = catalog();
  for (int p = 0; p < static_cast<int>(cat.size()); ++p) {
    const auto& pat = cat[p];
    const int k = pat.vertex_count;
    if (k > static_cast<int>(w.size())) continue;
    // Every injection [0,k) -> w: choose an ordered k-prefix of a permutation.
    std::vector<int> order(w.size());
    for (std::size_t t = 0; t < order.size(); ++t) order[t] = static_cast<int>(t);
    std::vector<std::vector<int>> seen;
    do {
      std::vector<int> prefix(order.begin(), order.begin() + k);
      if (std::find(seen.begin(), seen.end(), prefix) != seen.end()) continue;
      seen.push_back(prefix);
      std::array<Color, 3> slot{kUncolored, kUncolored, kUncolored};
      bool ok = true;
      for (const auto& pe : pat.edges) {
        const Color col = c.at(w[prefix[pe.x]], w[prefix[pe.y]]);
        if (col == kUncolored) ok = false;
        else if (slot[pe.slot] == kUncolored) slot[pe.slot] = col;
        else if (slot[pe.slot] != col) ok = false;
        if (!ok) break;
      }
      for (int s = 0; ok && s < pat.slot_count; ++s) {
        for (int t = s + 1; t < pat.slot_count; ++t) ok &= slot[s] != slot[t];
      }
      if (!ok) continue;
      BadOccurrence occ;
      occ.pattern = p;
      occ.type = pat.type;
      for (int x = 0; x < k; ++x) occ.vertices.push_back(w[prefix[x]]);
      occ.colors.assign(slot.begin(), slot.begin() + pat.slot_count);
      out.push_back(std::move(occ));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  canonicalize(out);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct TwoColoredTriangle {
  Vertex apex;
  Vertex end1, end2;
  Color path_color;
  Color base_color;
};

std::string list(std::initializer_list<Vertex> vs) {
  std::string s;
  for (Vertex v : vs) s += (s.empty() ? "" : ",") + std::to_string(v);
  return s;
}

int shared(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  int k = 0;
  for (Vertex x : a) k += static_cast<int>(std::count(b.begin(), b.end(), x));
  return k;
}

}  // namespace

PremiseReport check_premises(const Coloring& c, bool require_apex_isolation) {
  PremiseReport r;
  const auto dec = decompose(c);
  std::vector<const Component*> paths;
  for (const auto& [color, comps] : dec) {
    for (const auto& comp : comps) {
      if (comp.shape != Shape::K2 && comp.shape != Shape::P3) {
        r.violated = Premise::ClassShape;
        r.detail = "color " + std::to_string(color) + " has a " + shape_name(comp.shape) +
                   " component";
        r.witness = comp.vertices;
        return r;
      }
      if (comp.shape == Shape::P3) paths.push_back(&comp);
    }
  }
  for (std::size_t x = 0; x < paths.size(); ++x) {
    for (std::size_t y = x + 1; y < paths.size(); ++y) {
      if (shared(paths[x]->vertices, paths[y]->vertices) >= 2) {
        r.violated = Premise::PathOverlap;
        r.detail = "monochromatic paths in colors " + std::to_string(paths[x]->color) + " and " +
                   std::to_string(paths[y]->color) + " share two vertices";
        r.witness = paths[x]->vertices;
        r.witness.insert(r.witness.end(), paths[y]->vertices.begin(), paths[y]->vertices.end());
        return r;
      }
    }
  }

  std::vector<TwoColoredTriangle> triangles;
  for (const Component* p : paths) {
    const Vertex e1 = p->vertices[0], mid = p->vertices[1], e2 = p->vertices[2];
    const Color base = c.at(e1, e2);
    if (base != kUncolored) triangles.push_back({mid, e1, e2, p->color, base});
  }
  for (std::size_t x = 0; x < triangles.size(); ++x) {
    for (std::size_t y = x + 1; y < triangles.size(); ++y) {
      const auto& s = triangles[x];
      const auto& t = triangles[y];
      const std::vector<Vertex> sv{s.apex, s.end1, s.end2}, tv{t.apex, t.end1, t.end2};
      const bool touch = shared(sv, tv) > 0;
      const bool overlap = s.path_color == t.path_color || s.path_color == t.base_color ||
                           s.base_color == t.path_color || s.base_color == t.base_color;
      if (touch && overlap) {
        r.violated = Premise::TriangleColors;
        r.detail = "2-colored triangles {" + list({s.apex, s.end1, s.end2}) + "} and {" +
                   list({t.apex, t.end1, t.end2}) + "} share a vertex and a color";
        r.witness = sv;
        r.witness.insert(r.witness.end(), tv.begin(), tv.end());
        return r;
      }
    }
  }

  if (require_apex_isolation) {
    for (const auto& t : triangles) {
      for (Vertex z = 0; z < c.n(); ++z) {
        if (z == t.apex) continue;
        const bool apex_touch = c.at(t.apex, z) == t.base_color;
        const bool base_touch = (z != t.end2 && z != t.end1 &&
                                 (c.at(t.end1, z) == t.base_color || c.at(t.end2, z) == t.base_color));
        if (apex_touch || base_touch) {
          r.violated = Premise::ApexIsolation;
          r.detail = "triangle {" + list({t.apex, t.end1, t.end2}) + "}: color " +
                     std::to_string(t.base_color) + " of its base also meets vertex " +
                     std::to_string(apex_touch ? t.apex : z) + " elsewhere";
          r.witness = {t.apex, t.end1, t.end2, z};
          return r;
        }
      }
    }
  }
  return r;
}

EquivalenceReport coverage_equivalence_check(const Coloring& c, bool require_apex_isolation) {
  if (!c.is_total()) throw InputError("equivalence check requires a total coloring");
  const auto premises = check_premises(c, require_apex_isolation);
  if (!premises.ok()) throw InputError("premise violated: " + premises.detail);

  const int n = c.n();
  const auto occurrences = scan_bad(c);
  EquivalenceReport rep;
  std::array<Vertex, 5> s{};
  for (s[0] = 0; s[0] < n; ++s[0])
    for (s[1] = s[0] + 1; s[1] < n; ++s[1])
      for (s[2] = s[1] + 1; s[2] < n; ++s[2])
        for (s[3] = s[2] + 1; s[3] < n; ++s[3])
          for (s[4] = s[3] + 1; s[4] < n; ++s[4]) {
            ++rep.subsets;
            const int colors = colors_in_subset(c, s);
            const bool bad = colors < 8;
            bool contains = false;
            char strong = 0;  // a contained type b-f occurrence
            for (const auto& occ : occurrences) {
              const bool inside = std::all_of(occ.vertices.begin(), occ.vertices.end(), [&](Vertex v) {
                return std::find(s.begin(), s.end(), v) != s.end();
              });
              if (!inside) continue;
              contains = true;
              if (occ.type != 'a' && !strong) strong = occ.type;
            }
            rep.bad_subsets += bad;
            rep.subsets_with_occurrence += contains;
            if (bad && !contains) {
              rep.counterexamples.push_back({s, bad, colors, "bad subset without catalog occurrence"});
            }
            if (strong && !bad) {
              rep.counterexamples.push_back(
                  {s, bad, colors, std::string("type ") + strong + " occurrence in a subset that is not bad"});
            }
          }
  return rep;
}

}  // namespace r58
