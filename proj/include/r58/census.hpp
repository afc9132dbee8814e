#pragma once

#include "r58/graph.hpp"

namespace r58 {

/// Counts of maximal monochromatic components by shape. P3 components are
/// split into b1 (meeting every other P3 in at most one vertex) and b2.
struct Census {
  long long a = 0;   // K2
  long long b1 = 0;  // P3, isolated from other P3s
  long long b2 = 0;  // P3 sharing two vertices with some other P3
  long long c = 0;   // P4
  long long d = 0;   // K13
  long long e = 0;   // K3
  long long other = 0;

  long long paths() const { return b1 + b2; }
  bool operator==(const Census&) const = default;
};

Census census(const Coloring& coloring);
Census census(const Decomposition& decomposition);

/// C(n,2) == a + 2(b1 + b2) + 3c + 3d. Requires e == 0 and other == 0
/// (throws InputError naming the offending count); the census is assumed to
/// come from a total coloring.
bool check_pair_identity(const Census& census, long long n);

struct InequalityFlags {
  bool supply = false;  // a >= b1 + b2/2 + 2c + 3d
  bool star_slack = false;  // mn - 2 C(n,2) >= d - b1
  bool path_slack = false;  // mn - 2 C(n,2) >= -2a + 2b1 - 4b2 - 6c - 2d
  bool all() const { return supply && star_slack && path_slack; }
};

InequalityFlags check_inequalities(const Census& census, long long colors, long long n);

/// Color lower bound 3(n-3)+1 forced by a monochromatic triangle; n >= 4.
long long mono_triangle_bound(long long n);

}  // namespace r58
