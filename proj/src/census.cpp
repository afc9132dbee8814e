#include "r58/census.hpp"

#include <algorithm>
#include <string>

namespace r58 {

Census census(const Coloring& coloring) { return census(decompose(coloring)); }

Census census(const Decomposition& decomposition) {
  Census out;
  std::vector<std::vector<Vertex>> paths;
  for (const auto& [color, comps] : decomposition) {
    for (const auto& comp : comps) {
      switch (comp.shape) {
        case Shape::K2: ++out.a; break;
        case Shape::P3: {
          auto vs = comp.vertices;
          std::sort(vs.begin(), vs.end());
          paths.push_back(std::move(vs));
          break;
        }
        case Shape::P4: ++out.c; break;
        case Shape::K13: ++out.d; break;
        case Shape::K3: ++out.e; break;
        case Shape::Other: ++out.other; break;
      }
    }
  }
  std::vector<bool> paired(paths.size(), false);
  for (std::size_t x = 0; x < paths.size(); ++x) {
    for (std::size_t y = x + 1; y < paths.size(); ++y) {
      if (paired[x] && paired[y]) continue;
      std::vector<Vertex> common;
      std::set_intersection(paths[x].begin(), paths[x].end(), paths[y].begin(), paths[y].end(),
                            std::back_inserter(common));
      if (common.size() >= 2) paired[x] = paired[y] = true;
    }
  }
  for (bool p : paired) (p ? out.b2 : out.b1)++;
  return out;
}

bool check_pair_identity(const Census& s, long long n) {
  if (s.e != 0) throw InputError("pair identity requires no monochromatic triangle, e=" + std::to_string(s.e));
  if (s.other != 0) {
    throw InputError("pair identity requires every component to be K2/P3/P4/K13, other=" +
                     std::to_string(s.other));
  }
  return n * (n - 1) / 2 == s.a + 2 * s.paths() + 3 * s.c + 3 * s.d;
}

InequalityFlags check_inequalities(const Census& s, long long m, long long n) {
  InequalityFlags f;
  // Doubled to keep the b2/2 coefficient integral.
  f.supply = 2 * s.a >= 2 * s.b1 + s.b2 + 4 * s.c + 6 * s.d;
  const long long slack = m * n - n * (n - 1);
  f.star_slack = slack >= s.d - s.b1;
  f.path_slack = slack >= -2 * s.a + 2 * s.b1 - 4 * s.b2 - 6 * s.c - 2 * s.d;
  return f;
}

long long mono_triangle_bound(long long n) {
  if (n < 4) throw InputError("mono_triangle_bound requires n >= 4");
  return 3 * (n - 3) + 1;
}

}  // namespace r58
