#pragma once

#include <cstdint>
#include <optional>

#include "r58/graph.hpp"

namespace r58 {

struct OracleOptions {
  int q = 8;                    // required distinct colors per 5-subset
  bool allow_n7 = false;        // n = 7 is a long search
  double budget_seconds = 0;    // 0 means unlimited
};

struct OracleResult {
  std::optional<int> value;       // empty when the budget ran out
  std::optional<Coloring> witness;  // an optimal coloring
  long long nodes = 0;
};

/// Exact minimum number of colors of K_n such that every 5-subset sees at
/// least q colors, by canonical depth-first search with iterative deepening
/// on the color count. n in {5, 6}, or 7 with allow_n7.
OracleResult brute_force_min_colors(int n, const OracleOptions& opt = {});

/// Reference (5,8) check over sorted color lists; total colorings, n >= 5.
bool independent_verify(const Coloring& c);

/// A total coloring whose classes are vertex-disjoint edges and 2-edge
/// paths satisfying every premise of check_premises(); unplaced pairs get
/// fresh singleton colors. n >= 5.
Coloring random_premise_coloring(int n, std::uint64_t seed);

}  // namespace r58
