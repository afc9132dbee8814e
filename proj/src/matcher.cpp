#include "r58/matcher.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace r58 {

Probability Probability::parse(const std::string& text) {
  auto fail = [&] { throw InputError("invalid probability '" + text + "'"); };
  auto digits = [&](const std::string& s) {
    if (s.empty() || s.size() > 18 || !std::all_of(s.begin(), s.end(), ::isdigit)) fail();
    return std::stoull(s);
  };
  Probability p;
  if (auto slash = text.find('/'); slash != std::string::npos) {
    p.num = digits(text.substr(0, slash));
    p.den = digits(text.substr(slash + 1));
  } else if (auto dot = text.find('.'); dot != std::string::npos) {
    const std::string frac = text.substr(dot + 1);
    const std::string whole = text.substr(0, dot);
    if (frac.empty() || frac.size() > 17) fail();
    p.den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) p.den *= 10;
    p.num = (whole.empty() ? 0 : digits(whole)) * p.den + digits(frac);
  } else {
    p.num = digits(text);
    p.den = 1;
  }
  if (p.den == 0 || p.num > p.den) fail();
  const auto g = std::gcd(p.num, p.den);
  p.num /= g;
  p.den /= g;
  return p;
}

std::string Probability::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

SplitTable::SplitTable(int n, int k, std::uint64_t seed)
    : n_(n), k_(k), seed_(seed), sides_(static_cast<std::size_t>(n) * k, Side::Primary) {}

long long SplitTable::apex_count() const {
  return std::count(sides_.begin(), sides_.end(), Side::Apex);
}

SplitTable random_split(int n, int k, Probability p, std::uint64_t seed) {
  if (n < 1 || k < 1) throw InputError("random_split requires n, k >= 1");
  SplitTable t(n, k, seed);
  Rng rng(seed, Stream::Split);
  for (Vertex v = 0; v < n; ++v) {
    for (Color c = 0; c < k; ++c) {
      if (p.draw(rng)) t.set(v, c, Side::Apex);
    }
  }
  return t;
}

const char* reject_name(RejectReason r) {
  switch (r) {
    case RejectReason::EdgeTaken: return "EdgeTaken";
    case RejectReason::SlotWrongSide: return "SlotWrongSide";
    case RejectReason::SlotUsed: return "SlotUsed";
    case RejectReason::CreatesBadSubgraph: return "CreatesBadSubgraph";
  }
  return "?";
}

std::string CheckResult::str() const {
  if (accepted) return "accept";
  std::string s = reject_name(reason);
  if (reason == RejectReason::CreatesBadSubgraph) s += std::string("(") + bad_type + ")";
  return s;
}

MatchingState::MatchingState(SplitTable split)
    : split_(std::move(split)),
      index_(split_.n()),
      used_(static_cast<std::size_t>(split_.n()) * split_.k(), false) {}

namespace {

struct Slot {
  Vertex v;
  Color c;
  Side side;
};

std::array<Slot, 6> slots_of(const ChosenTriangle& t) {
  return {{{t.apex, t.primary, Side::Primary},
           {t.v, t.primary, Side::Primary},
           {t.w, t.primary, Side::Primary},
           {t.v, t.secondary, Side::Primary},
           {t.w, t.secondary, Side::Primary},
           {t.apex, t.secondary, Side::Apex}}};
}

std::array<std::pair<EdgeId, Color>, 3> edges_of(const ChosenTriangle& t, int n) {
  return {{{edge_index(t.apex, t.v, n), t.primary},
           {edge_index(t.apex, t.w, n), t.primary},
           {edge_index(t.v, t.w, n), t.secondary}}};
}

}  // namespace

void MatchingState::commit(const ChosenTriangle& t) {
  for (auto [e, c] : edges_of(t, n())) index_.assign(e, c);
  for (const auto& s : slots_of(t)) used_[static_cast<std::size_t>(s.v) * k() + s.c] = true;
  triangles_.push_back(t);
}

CheckResult candidate_check(MatchingState& state, const ChosenTriangle& cand) {
  CheckResult r;
  const int n = state.n();
  const auto edges = edges_of(cand, n);
  for (auto [e, c] : edges) {
    if (state.coloring().at_edge(e) != kUncolored) {
      r.reason = RejectReason::EdgeTaken;
      return r;
    }
  }
  const auto slots = slots_of(cand);
  for (const auto& s : slots) {
    if (state.split().at(s.v, s.c) != s.side) {
      r.reason = RejectReason::SlotWrongSide;
      return r;
    }
  }
  for (const auto& s : slots) {
    if (state.used(s.v, s.c)) {
      r.reason = RejectReason::SlotUsed;
      return r;
    }
  }
  // Tentatively color, look for an occurrence through a new edge, revert.
  auto& index = state.index_;
  for (auto [e, c] : edges) index.assign(e, c);
  std::optional<BadOccurrence> hit;
  for (auto [e, c] : edges) {
    hit = first_occurrence_through(index, e);
    if (hit) break;
  }
  for (auto [e, c] : edges) index.unassign(e);
  if (hit) {
    r.reason = RejectReason::CreatesBadSubgraph;
    r.bad_type = hit->type;
    return r;
  }
  r.accepted = true;
  return r;
}

std::optional<std::string> matching_invariant_violation(const MatchingState& s) {
  const int n = s.n();
  std::ostringstream err;
  Coloring expect(n);
  std::vector<int> owner(static_cast<std::size_t>(n) * s.k(), -1);
  for (std::size_t t = 0; t < s.triangles_.size(); ++t) {
    const auto& tri = s.triangles_[t];
    if (tri.primary == tri.secondary || tri.apex == tri.v || tri.apex == tri.w || tri.v == tri.w) {
      err << "triangle " << t << " is malformed";
      return err.str();
    }
    for (auto [e, c] : edges_of(tri, n)) {
      if (expect.at_edge(e) != kUncolored) {
        err << "triangle " << t << " reuses edge " << e;
        return err.str();
      }
      expect.set_edge(e, c);
    }
    for (const auto& sl : slots_of(tri)) {
      if (s.split_.at(sl.v, sl.c) != sl.side) {
        err << "triangle " << t << " slot (" << sl.v << "," << sl.c << ") on wrong side";
        return err.str();
      }
      auto& o = owner[static_cast<std::size_t>(sl.v) * s.k() + sl.c];
      if (o != -1) {
        err << "slot (" << sl.v << "," << sl.c << ") used by triangles " << o << " and " << t;
        return err.str();
      }
      o = static_cast<int>(t);
    }
  }
  for (std::size_t i = 0; i < owner.size(); ++i) {
    if ((owner[i] != -1) != s.used_[i]) {
      err << "usage flag mismatch at slot " << i;
      return err.str();
    }
  }
  if (!(expect == s.coloring())) return "coloring differs from the chosen triangles";
  auto bad = scan_bad(s.coloring());
  if (!bad.empty()) return "coloring contains " + bad.front().to_line();
  return std::nullopt;
}

long long StopRule::rejections_for(int n) const {
  if (max_rejections > 0) return max_rejections;
  const auto ln = static_cast<long long>(std::ceil(std::log(std::max(n, 2))));
  return 50LL * n * ln;
}

namespace {

// Free Primary and free Apex colors per vertex, as bitsets.
class FreeSlots {
 public:
  explicit FreeSlots(const MatchingState& s) : words_((s.k() + 63) / 64) {
    primary_.assign(static_cast<std::size_t>(s.n()) * words_, 0);
    apex_.assign(static_cast<std::size_t>(s.n()) * words_, 0);
    for (Vertex v = 0; v < s.n(); ++v) {
      for (Color c = 0; c < s.k(); ++c) {
        if (s.used(v, c)) continue;
        auto& bits = s.split().at(v, c) == Side::Primary ? primary_ : apex_;
        bits[v * words_ + c / 64] |= std::uint64_t{1} << (c % 64);
      }
    }
  }

  void take(const ChosenTriangle& t) {
    for (const auto& sl : slots_of(t)) {
      auto& bits = sl.side == Side::Primary ? primary_ : apex_;
      bits[sl.v * words_ + sl.c / 64] &= ~(std::uint64_t{1} << (sl.c % 64));
    }
  }

  template <class F>
  bool for_each_candidate(Vertex apex, Vertex v, Vertex w, F&& f) const {
    for (std::size_t wi = 0; wi < words_; ++wi) {
      std::uint64_t ibits = primary_[apex * words_ + wi] & primary_[v * words_ + wi] &
                            primary_[w * words_ + wi];
      while (ibits) {
        const Color i = static_cast<Color>(wi * 64 + std::countr_zero(ibits));
        ibits &= ibits - 1;
        for (std::size_t wl = 0; wl < words_; ++wl) {
          std::uint64_t lbits = apex_[apex * words_ + wl] & primary_[v * words_ + wl] &
                                primary_[w * words_ + wl];
          while (lbits) {
            const Color l = static_cast<Color>(wl * 64 + std::countr_zero(lbits));
            lbits &= lbits - 1;
            if (f(ChosenTriangle{apex, v, w, i, l})) return true;
          }
        }
      }
    }
    return false;
  }

 private:
  std::size_t words_;
  std::vector<std::uint64_t> primary_;
  std::vector<std::uint64_t> apex_;
};

void commit_checked(MatchingState& state, const ChosenTriangle& t, bool debug) {
  state.commit(t);
  if (debug) {
    if (auto why = matching_invariant_violation(state)) {
      throw std::logic_error("matching invariant violated: " + *why);
    }
  }
}

}  // namespace

MatchingState greedy_matching(const MatchingOptions& opt) {
  const int n = opt.n;
  const int k = opt.k > 0 ? opt.k : n;
  if (n < 1) throw InputError("greedy_matching requires n >= 1");
  MatchingState state(random_split(n, k, opt.p, opt.seed));
  if (n < 3 || k < 2) return state;

  Rng rng(opt.seed, Stream::Candidates);
  const long long limit = opt.stop.rejections_for(n);
  long long streak = 0;
  while (streak < limit) {
    ChosenTriangle t;
    t.apex = rng.below(n);
    Vertex a = rng.below(n - 1);
    if (a >= t.apex) ++a;
    Vertex b = rng.below(n - 2);
    const Vertex lo = std::min(t.apex, a), hi = std::max(t.apex, a);
    if (b >= lo) ++b;
    if (b >= hi) ++b;
    t.v = std::min(a, b);
    t.w = std::max(a, b);
    t.primary = rng.below(k);
    t.secondary = rng.below(k - 1);
    if (t.secondary >= t.primary) ++t.secondary;

    const auto r = candidate_check(state, t);
    if (r.accepted) {
      commit_checked(state, t, opt.stop.debug_invariants);
      streak = 0;
    } else {
      ++state.rejections()[r.str()];
      ++streak;
    }
  }

  if (opt.stop.sweep_for(n)) {
    // Rejections only become permanent as the coloring grows, so a single
    // lexicographic pass leaves no acceptable candidate behind.
    FreeSlots free(state);
    const Coloring& col = state.coloring();
    for (Vertex x = 0; x < n; ++x) {
      for (Vertex y = x + 1; y < n; ++y) {
        if (col.at_edge(edge_index_ordered(x, y, n)) != kUncolored) continue;
        for (Vertex z = y + 1; z < n; ++z) {
          if (col.at_edge(edge_index_ordered(x, z, n)) != kUncolored ||
              col.at_edge(edge_index_ordered(y, z, n)) != kUncolored) {
            continue;
          }
          const std::array<std::array<Vertex, 3>, 3> roles{{{x, y, z}, {y, x, z}, {z, x, y}}};
          for (const auto& [apex, v, w] : roles) {
            const bool placed = free.for_each_candidate(apex, v, w, [&](const ChosenTriangle& t) {
              if (!candidate_check(state, t).accepted) return false;
              commit_checked(state, t, opt.stop.debug_invariants);
              free.take(t);
              return true;
            });
            if (placed) break;
          }
          if (col.at_edge(edge_index_ordered(x, y, n)) != kUncolored) break;
        }
      }
    }
  }
  return state;
}

CoverageStats coverage_stats(const MatchingState& state) {
  CoverageStats s;
  const int n = state.n();
  s.degree.assign(n, 0);
  for (const auto& t : state.triangles()) {
    s.degree[t.apex] += 2;
    s.degree[t.v] += 2;
    s.degree[t.w] += 2;
  }
  if (n == 0) return s;
  s.min = *std::min_element(s.degree.begin(), s.degree.end());
  s.max = *std::max_element(s.degree.begin(), s.degree.end());
  s.mean = std::accumulate(s.degree.begin(), s.degree.end(), 0.0) / n;
  return s;
}

ExpectedDegrees expected_degrees(int n, int k, double p) {
  if (n < 3 || k < 2) throw InputError("expected_degrees requires n >= 3, k >= 2");
  const double q = 1 - p;
  const double pairs = (n - 1.0) * (n - 2.0) / 2.0;
  ExpectedDegrees d;
  d.d_edge = (n - 2.0) * k * (k - 1.0) * 3.0 * std::pow(q, 5) * p;
  d.d_primary = (pairs + 2.0 * (n - 1.0) * (n - 2.0)) * (k - 1.0) * std::pow(q, 4) * p;
  d.d_apex = pairs * (k - 1.0) * std::pow(q, 5);
  return d;
}

DegreeCounts hyperedge_degrees(const SplitTable& split) {
  // Enumerates every hyperedge (apex u, base {v,w}, i != l) and tests the
  // six slot sides directly.
  DegreeCounts out;
  const int n = split.n(), k = split.k();
  auto valid = [&](Vertex u, Vertex v, Vertex w, Color i, Color l) {
    return split.at(u, i) == Side::Primary && split.at(v, i) == Side::Primary &&
           split.at(w, i) == Side::Primary && split.at(v, l) == Side::Primary &&
           split.at(w, l) == Side::Primary && split.at(u, l) == Side::Apex;
  };
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      for (Vertex w = v + 1; w < n; ++w) {
        if (v == u || w == u) continue;
        const auto has = [&](Vertex x) { return u == x || v == x || w == x; };
        const bool has_edge = has(0) && has(1);
        for (Color i = 0; i < k; ++i) {
          for (Color l = 0; l < k; ++l) {
            if (i == l || !valid(u, v, w, i, l)) continue;
            if (has_edge) ++out.edge;
            const bool primary_slot = (i == 0 && (u == 0 || v == 0 || w == 0)) ||
                                      (l == 0 && (v == 0 || w == 0));
            if (primary_slot) ++out.primary;
            if (u == 0 && l == 0) ++out.apex;
          }
        }
      }
    }
  }
  return out;
}

DegreeSample monte_carlo_degree(int n, int k, Probability p, int samples, std::uint64_t seed) {
  if (samples < 1) throw InputError("monte_carlo_degree requires samples >= 1");
  if (n < 3 || k < 2) throw InputError("monte_carlo_degree requires n >= 3, k >= 2");
  std::array<double, 3> sum{}, sq{};
  for (int s = 0; s < samples; ++s) {
    auto split = random_split(n, k, p, derive_seed(seed, Stream::MonteCarlo, s));
    const auto plain = hyperedge_degrees(split);
    split.set(0, 0, Side::Primary);
    const auto primary = hyperedge_degrees(split).primary;
    split.set(0, 0, Side::Apex);
    const auto apex = hyperedge_degrees(split).apex;
    const std::array<double, 3> x{static_cast<double>(plain.edge), static_cast<double>(primary),
                                  static_cast<double>(apex)};
    for (int j = 0; j < 3; ++j) {
      sum[j] += x[j];
      sq[j] += x[j] * x[j];
    }
  }
  auto estimate = [&](int j) {
    Estimate e;
    e.mean = sum[j] / samples;
    if (samples > 1) {
      const double var = std::max(0.0, (sq[j] - samples * e.mean * e.mean) / (samples - 1));
      e.stderr_ = std::sqrt(var / samples);
    }
    return e;
  };
  return {estimate(0), estimate(1), estimate(2)};
}

std::string stage1_report_json(const MatchingState& state, const MatchingOptions& opt) {
  const auto cov = coverage_stats(state);
  nlohmann::ordered_json j;
  j["n"] = state.n();
  j["seed"] = opt.seed;
  j["k"] = state.k();
  j["p"] = opt.p.str();
  j["stop_rejections"] = opt.stop.rejections_for(state.n());
  j["sweep"] = opt.stop.sweep_for(state.n());
  j["triangles"] = state.triangles().size();
  j["rejections"] = state.rejections();
  j["coverage"] = {{"min", cov.min}, {"mean", cov.mean}, {"max", cov.max}};
  j["generator"] = kGeneratorName;
  return j.dump(2) + "\n";
}

}  // namespace r58
