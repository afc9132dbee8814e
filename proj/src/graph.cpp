#include "r58/graph.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace r58 {

ParseError::ParseError(int line, const std::string& what)
    : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

EdgeId edge_index(Vertex u, Vertex v, int n) {
  if (u < 0 || v < 0 || u >= n || v >= n) {
    throw InputError("vertex out of range: {" + std::to_string(u) + "," + std::to_string(v) +
                     "} with n=" + std::to_string(n));
  }
  if (u == v) throw InputError("loop pair {" + std::to_string(u) + "," + std::to_string(v) + "}");
  if (u > v) std::swap(u, v);
  return edge_index_ordered(u, v, n);
}

Edge edge_endpoints(EdgeId id, int n) {
  if (id < 0 || id >= edge_count(n)) throw InputError("edge id out of range: " + std::to_string(id));
  Vertex u = 0;
  EdgeId row = n - 1;
  while (id >= row) {
    id -= row;
    ++u;
    --row;
  }
  return {u, u + 1 + id};
}

Coloring::Coloring(int n) : n_(n) {
  if (n < 1) throw InputError("vertex count must be at least 1");
  colors_.assign(static_cast<std::size_t>(edge_count(n)), kUncolored);
}

void Coloring::set_edge(EdgeId e, Color c) {
  if (c < kUncolored) throw InputError("negative color id " + std::to_string(c));
  colors_.at(static_cast<std::size_t>(e)) = c;
}

bool Coloring::is_total() const {
  return std::none_of(colors_.begin(), colors_.end(), [](Color c) { return c == kUncolored; });
}

EdgeId Coloring::colored_count() const {
  return static_cast<EdgeId>(
      std::count_if(colors_.begin(), colors_.end(), [](Color c) { return c != kUncolored; }));
}

std::vector<Color> Coloring::used_colors() const {
  std::vector<Color> out;
  for (Color c : colors_) {
    if (c != kUncolored) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Color Coloring::max_color() const {
  Color m = kUncolored;
  for (Color c : colors_) m = std::max(m, c);
  return m;
}

const char* shape_name(Shape s) {
  switch (s) {
    case Shape::K2: return "K2";
    case Shape::P3: return "P3";
    case Shape::P4: return "P4";
    case Shape::K13: return "K13";
    case Shape::K3: return "K3";
    case Shape::Other: return "OTHER";
  }
  return "?";
}

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

Component classify(Color color, std::vector<EdgeId> edges, int n) {
  Component comp;
  comp.color = color;
  std::sort(edges.begin(), edges.end());
  std::map<Vertex, int> degree;
  for (EdgeId e : edges) {
    auto [u, v] = edge_endpoints(e, n);
    ++degree[u];
    ++degree[v];
  }
  std::vector<Vertex> sorted;
  for (auto [v, d] : degree) sorted.push_back(v);
  const auto nv = sorted.size();
  const auto ne = edges.size();

  auto center_of_degree = [&](int want) {
    for (auto [v, d] : degree) {
      if (d == want) return v;
    }
    return -1;
  };

  if (ne == 1) {
    comp.shape = Shape::K2;
    comp.vertices = sorted;
  } else if (ne == 2 && nv == 3) {
    comp.shape = Shape::P3;
    Vertex mid = center_of_degree(2);
    for (Vertex v : sorted) {
      if (v != mid) comp.vertices.push_back(v);
    }
    comp.vertices.insert(comp.vertices.begin() + 1, mid);
  } else if (ne == 3 && nv == 3) {
    comp.shape = Shape::K3;
    comp.vertices = sorted;
  } else if (ne == 3 && nv == 4) {
    Vertex hub = center_of_degree(3);
    if (hub >= 0) {
      comp.shape = Shape::K13;
      comp.vertices.push_back(hub);
      for (Vertex v : sorted) {
        if (v != hub) comp.vertices.push_back(v);
      }
    } else {
      comp.shape = Shape::P4;
      Vertex cur = center_of_degree(1);  // smallest end
      Vertex prev = -1;
      comp.vertices.push_back(cur);
      while (comp.vertices.size() < 4) {
        for (EdgeId e : edges) {
          auto [u, v] = edge_endpoints(e, n);
          Vertex other = u == cur ? v : (v == cur ? u : -1);
          if (other >= 0 && other != prev) {
            prev = cur;
            cur = other;
            comp.vertices.push_back(cur);
            break;
          }
        }
      }
    }
  } else {
    comp.shape = Shape::Other;
    comp.vertices = sorted;
  }
  comp.edges = std::move(edges);
  return comp;
}

}  // namespace

Decomposition decompose(const Coloring& c) {
  const int n = c.n();
  std::map<Color, std::vector<EdgeId>> classes;
  for (EdgeId e = 0; e < c.edges(); ++e) {
    if (c.at_edge(e) != kUncolored) classes[c.at_edge(e)].push_back(e);
  }
  Decomposition out;
  DisjointSets sets(n);
  for (auto& [color, edges] : classes) {
    for (EdgeId e : edges) {
      auto [u, v] = edge_endpoints(e, n);
      sets.parent[u] = u;
      sets.parent[v] = v;
    }
    for (EdgeId e : edges) {
      auto [u, v] = edge_endpoints(e, n);
      sets.unite(u, v);
    }
    std::map<int, std::vector<EdgeId>> groups;
    for (EdgeId e : edges) groups[sets.find(edge_endpoints(e, n).u)].push_back(e);

    auto& comps = out[color];
    for (auto& [root, group] : groups) comps.push_back(classify(color, std::move(group), n));
    std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
      auto sa = a.vertices, sb = b.vertices;
      std::sort(sa.begin(), sa.end());
      std::sort(sb.begin(), sb.end());
      return sa < sb;
    });
  }
  return out;
}

int colors_in_subset(const Coloring& c, std::span<const Vertex> subset) {
  if (subset.size() != 5) throw InputError("subset must have exactly 5 vertices");
  std::array<Color, 10> seen{};
  int count = 0;
  for (std::size_t a = 0; a < 5; ++a) {
    for (std::size_t b = a + 1; b < 5; ++b) {
      Color col = c.at(subset[a], subset[b]);
      if (col == kUncolored) continue;
      if (std::find(seen.begin(), seen.begin() + count, col) == seen.begin() + count) {
        seen[count++] = col;
      }
    }
  }
  return count;
}

namespace {

struct ScanResult {
  int min_colors = std::numeric_limits<int>::max();
  std::array<Vertex, 5> witness{};
};

// Scans all 5-subsets whose smallest vertex is `a`, in lexicographic order.
// `matrix` holds compacted color ids; `stamp` is a per-worker marker array.
ScanResult scan_from(int a, int n, const std::vector<int>& matrix, std::vector<std::uint32_t>& stamp,
                     std::uint32_t& generation) {
  ScanResult best;
  auto col = [&](int x, int y) { return matrix[static_cast<std::size_t>(x) * n + y]; };
  for (int b = a + 1; b < n; ++b) {
    for (int c = b + 1; c < n; ++c) {
      for (int d = c + 1; d < n; ++d) {
        ++generation;
        int base = 0;
        const int inner[6] = {col(a, b), col(a, c), col(a, d), col(b, c), col(b, d), col(c, d)};
        for (int x : inner) {
          if (stamp[x] != generation) {
            stamp[x] = generation;
            ++base;
          }
        }
        for (int e = d + 1; e < n; ++e) {
          const int add[4] = {col(a, e), col(b, e), col(c, e), col(d, e)};
          int total = base;
          for (int j = 0; j < 4; ++j) {
            if (stamp[add[j]] == generation) continue;
            bool repeat = false;
            for (int i = 0; i < j; ++i) repeat |= add[i] == add[j];
            if (!repeat) ++total;
          }
          if (total < best.min_colors) {
            best.min_colors = total;
            best.witness = {a, b, c, d, e};
          }
        }
      }
    }
  }
  return best;
}

}  // namespace

VerifyReport verify_58(const Coloring& c, int threads) {
  if (!c.is_total()) throw InputError("verification requires total coloring");
  VerifyReport report;
  const int n = c.n();
  if (n < 5) return report;

  std::unordered_map<Color, int> compact;
  std::vector<int> matrix(static_cast<std::size_t>(n) * n, 0);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      auto [it, fresh] = compact.try_emplace(c.at_edge(edge_index_ordered(u, v, n)),
                                             static_cast<int>(compact.size()));
      matrix[static_cast<std::size_t>(u) * n + v] = it->second;
      matrix[static_cast<std::size_t>(v) * n + u] = it->second;
    }
  }
  const std::size_t palette = compact.size();

  std::vector<ScanResult> per_first(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  auto worker = [&] {
    std::vector<std::uint32_t> stamp(palette, 0);
    std::uint32_t generation = 0;
    for (int a = next++; a <= n - 5; a = next++) {
      per_first[a] = scan_from(a, n, matrix, stamp, generation);
    }
  };
  threads = std::max(1, threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  ScanResult best;
  for (int a = 0; a <= n - 5; ++a) {
    if (per_first[a].min_colors < best.min_colors) best = per_first[a];
  }
  report.min_colors_seen = best.min_colors;
  report.valid = best.min_colors >= 8;
  if (!report.valid) report.witness = best.witness;
  return report;
}

Coloring read_coloring(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next_content_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_content_line(line)) throw ParseError(1, "missing header \"n m\"");
  long long n = 0, m = 0;
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> n >> m) || (hs >> extra)) throw ParseError(line_no, "header must be \"n m\"");
  }
  if (n < 1) throw ParseError(line_no, "vertex count must be at least 1");
  if (n > 100000) throw ParseError(line_no, "vertex count too large");
  if (m < 0 || m > edge_count(static_cast<int>(n))) {
    throw ParseError(line_no, "edge count out of range");
  }

  Coloring c(static_cast<int>(n));
  for (long long i = 0; i < m; ++i) {
    if (!next_content_line(line)) {
      throw ParseError(line_no + 1, "expected " + std::to_string(m) + " edge lines, got " +
                                        std::to_string(i));
    }
    std::istringstream ls(line);
    long long u = 0, v = 0, col = 0;
    std::string extra;
    if (!(ls >> u >> v >> col) || (ls >> extra)) throw ParseError(line_no, "expected \"u v c\"");
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) {
      throw ParseError(line_no, "invalid vertex pair");
    }
    if (col < 0 || col > std::numeric_limits<Color>::max()) {
      throw ParseError(line_no, "invalid color id");
    }
    EdgeId e = edge_index(static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<int>(n));
    if (c.at_edge(e) != kUncolored) throw ParseError(line_no, "duplicate pair");
    c.set_edge(e, static_cast<Color>(col));
  }
  if (next_content_line(line)) throw ParseError(line_no, "trailing content after edge list");
  return c;
}

Coloring read_coloring_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_coloring(in);
}

void write_coloring(std::ostream& out, const Coloring& c) {
  out << c.n() << ' ' << c.colored_count() << '\n';
  for (EdgeId e = 0; e < c.edges(); ++e) {
    if (c.at_edge(e) == kUncolored) continue;
    auto [u, v] = edge_endpoints(e, c.n());
    out << u << ' ' << v << ' ' << c.at_edge(e) << '\n';
  }
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp);
    out << contents;
    if (!out.flush()) throw InputError("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace r58
