#include "r58/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <vector>

#include "r58/patterns.hpp"
#include "r58/rng.hpp"

namespace r58 {

namespace {

class MinColorSearch {
 public:
  MinColorSearch(int n, const OracleOptions& opt)
      : n_(n), q_(opt.q), edges_(edge_count(n)), budget_(opt.budget_seconds),
        start_(std::chrono::steady_clock::now()), assignment_(edges_, kUncolored),
        subsets_of_(edges_) {
    std::vector<Vertex> s(5);
    for (s[0] = 0; s[0] < n; ++s[0])
      for (s[1] = s[0] + 1; s[1] < n; ++s[1])
        for (s[2] = s[1] + 1; s[2] < n; ++s[2])
          for (s[3] = s[2] + 1; s[3] < n; ++s[3])
            for (s[4] = s[3] + 1; s[4] < n; ++s[4]) {
              const int id = static_cast<int>(remaining_.size());
              for (int a = 0; a < 5; ++a)
                for (int b = a + 1; b < 5; ++b) subsets_of_[edge_index(s[a], s[b], n)].push_back(id);
              remaining_.push_back(10);
              distinct_.push_back(0);
            }
  }

  // true when a coloring with at most m colors exists; throws Timeout.
  bool feasible(int m) {
    m_ = m;
    counts_.assign(remaining_.size() * m, 0);
    std::fill(distinct_.begin(), distinct_.end(), 0);
    std::fill(remaining_.begin(), remaining_.end(), 10);
    std::fill(assignment_.begin(), assignment_.end(), kUncolored);
    return dfs(0, 0);
  }

  long long nodes() const { return nodes_; }
  Coloring witness() const {
    Coloring c(n_);
    for (EdgeId e = 0; e < edges_; ++e) c.set_edge(e, assignment_[e]);
    return c;
  }

  struct Timeout {};

 private:
  bool dfs(EdgeId e, int used) {
    if (e == edges_) return true;
    if ((++nodes_ & 0xfff) == 0 && budget_ > 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count() > budget_) {
      throw Timeout{};
    }
    const int top = std::min(used + 1, m_);
    for (Color c = 0; c < top; ++c) {
      if (assign(e, c)) {
        if (dfs(e + 1, std::max(used, c + 1))) return true;
      }
      unassign(e, c);
    }
    return false;
  }

  // Applies the assignment and reports whether every touched subset can
  // still reach q colors. Always fully applied, so unassign() undoes it.
  bool assign(EdgeId e, Color c) {
    assignment_[e] = c;
    bool ok = true;
    for (int s : subsets_of_[e]) {
      if (counts_[s * m_ + c]++ == 0) ++distinct_[s];
      --remaining_[s];
      ok &= distinct_[s] + remaining_[s] >= q_;
    }
    return ok;
  }

  void unassign(EdgeId e, Color c) {
    assignment_[e] = kUncolored;
    for (int s : subsets_of_[e]) {
      if (--counts_[s * m_ + c] == 0) --distinct_[s];
      ++remaining_[s];
    }
  }

  int n_;
  int q_;
  EdgeId edges_;
  int m_ = 0;
  double budget_;
  std::chrono::steady_clock::time_point start_;
  long long nodes_ = 0;
  std::vector<Color> assignment_;
  std::vector<std::vector<int>> subsets_of_;
  std::vector<int> remaining_;
  std::vector<int> distinct_;
  std::vector<unsigned char> counts_;
};

}  // namespace

OracleResult brute_force_min_colors(int n, const OracleOptions& opt) {
  if (!(n == 5 || n == 6 || (n == 7 && opt.allow_n7))) {
    throw InputError("brute force supports n = 5, 6 (7 with the long-search flag), got " +
                     std::to_string(n));
  }
  if (opt.q < 1 || opt.q > 10) throw InputError("q must lie in [1, 10]");
  MinColorSearch search(n, opt);
  OracleResult r;
  try {
    for (int m = opt.q; m <= edge_count(n); ++m) {
      if (search.feasible(m)) {
        r.value = m;
        r.witness = search.witness();
        break;
      }
    }
  } catch (const MinColorSearch::Timeout&) {
    r.value.reset();
  }
  r.nodes = search.nodes();
  return r;
}

bool independent_verify(const Coloring& c) {
  const int n = c.n();
  if (n < 5) throw InputError("independent_verify requires n >= 5");
  if (!c.is_total()) throw InputError("independent_verify requires a total coloring");
  std::vector<Vertex> pick(5);
  for (int i = 0; i < 5; ++i) pick[i] = i;
  for (;;) {
    std::vector<Color> seen;
    for (int a = 0; a < 5; ++a)
      for (int b = a + 1; b < 5; ++b) seen.push_back(c.at(pick[a], pick[b]));
    std::sort(seen.begin(), seen.end());
    if (std::unique(seen.begin(), seen.end()) - seen.begin() < 8) return false;
    // Next 5-combination in lexicographic order.
    int i = 4;
    while (i >= 0 && pick[i] == n - 5 + i) --i;
    if (i < 0) return true;
    ++pick[i];
    for (int j = i + 1; j < 5; ++j) pick[j] = pick[j - 1] + 1;
  }
}

Coloring random_premise_coloring(int n, std::uint64_t seed) {
  if (n < 5) throw InputError("random_premise_coloring requires n >= 5");
  Rng rng(seed, Stream::Generator);
  const int classes = 2 + rng.below(n);
  const int path_weight = 1 + rng.below(3);  // out of 4
  Coloring c(n);

  auto completed = [&](const Coloring& partial) {
    Coloring full = partial;
    Color next = classes;
    for (EdgeId e = 0; e < full.edges(); ++e) {
      if (full.at_edge(e) == kUncolored) full.set_edge(e, next++);
    }
    return full;
  };

  const int attempts = 3 * edge_count(n);
  for (int t = 0; t < attempts; ++t) {
    const Color col = rng.below(classes);
    std::vector<Vertex> vs;
    const int size = rng.below(4) < path_weight ? 3 : 2;
    while (static_cast<int>(vs.size()) < size) {
      const Vertex v = rng.below(n);
      if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
    }
    std::vector<EdgeId> es{edge_index(vs[0], vs[1], n)};
    if (size == 3) es.push_back(edge_index(vs[0], vs[2], n));  // center vs[0]
    bool free = true;
    for (EdgeId e : es) free &= c.at_edge(e) == kUncolored;
    if (!free) continue;
    for (EdgeId e : es) c.set_edge(e, col);
    if (!check_premises(completed(c)).ok()) {
      for (EdgeId e : es) c.clear_edge(e);
    }
  }
  return completed(c);
}

}  // namespace r58
