#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "r58/graph.hpp"
#include "r58/rng.hpp"

namespace r58::test {

// Uniform random total coloring with `palette` colors.
inline Coloring random_total(int n, int palette, Rng& rng) {
  Coloring c(n);
  for (EdgeId e = 0; e < c.edges(); ++e) c.set_edge(e, rng.below(palette));
  return c;
}

// Random partial coloring: each edge colored with probability `density`.
inline Coloring random_partial(int n, int palette, double density, Rng& rng) {
  Coloring c(n);
  for (EdgeId e = 0; e < c.edges(); ++e) {
    if (rng.bernoulli(density)) c.set_edge(e, rng.below(palette));
  }
  return c;
}

inline Coloring rainbow(int n) {
  Coloring c(n);
  for (EdgeId e = 0; e < c.edges(); ++e) c.set_edge(e, e);
  return c;
}

inline Coloring monochromatic(int n, Color col = 0) {
  Coloring c(n);
  for (EdgeId e = 0; e < c.edges(); ++e) c.set_edge(e, col);
  return c;
}

// Applies a random permutation to the ids of the used colors.
inline Coloring relabel_colors(const Coloring& c, Rng& rng) {
  auto used = c.used_colors();
  auto perm = used;
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(static_cast<int>(i))]);
  Coloring out(c.n());
  for (EdgeId e = 0; e < c.edges(); ++e) {
    if (c.at_edge(e) == kUncolored) continue;
    auto pos = std::lower_bound(used.begin(), used.end(), c.at_edge(e)) - used.begin();
    out.set_edge(e, perm[pos]);
  }
  return out;
}

}  // namespace r58::test
