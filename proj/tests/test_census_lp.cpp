#include <optional>

#include "doctest.h"
#include "r58/census.hpp"
#include "r58/lp.hpp"

using namespace r58;

namespace {

// Independent oracle: enumerate every basic solution of the program
// (6 variables, the equality plus 5 of the 8 inequality/bound rows active),
// solve each 6x6 system by Gaussian elimination, and keep the best feasible.
std::optional<Rational> vertex_enumeration_optimum(const LinearProgram& lp) {
  const std::size_t nv = lp.variables();
  struct Row {
    std::vector<Rational> a;
    Rational b;
    Sense sense;
  };
  std::vector<Row> rows;
  Row eq{};
  for (const auto& con : lp.constraints) {
    Row r{con.coeffs, con.rhs, con.sense};
    if (con.sense == Sense::Eq) eq = r;
    else rows.push_back(r);
  }
  for (std::size_t j = 0; j < nv; ++j) {
    if (lp.free[j]) continue;
    std::vector<Rational> a(nv, Rational(0));
    a[j] = 1;
    rows.push_back({a, Rational(0), Sense::Ge});
  }
  std::optional<Rational> best;
  const std::size_t k = nv - 1;
  std::vector<int> pick(rows.size(), 0);
  std::fill(pick.end() - static_cast<long>(k), pick.end(), 1);
  do {
    std::vector<std::vector<Rational>> m;
    auto push = [&](const Row& r) {
      auto line = r.a;
      line.push_back(r.b);
      m.push_back(line);
    };
    push(eq);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (pick[i]) push(rows[i]);
    }
    bool singular = false;
    for (std::size_t col = 0; col < nv && !singular; ++col) {
      std::size_t piv = col;
      while (piv < nv && m[piv][col] == 0) ++piv;
      if (piv == nv) {
        singular = true;
        break;
      }
      std::swap(m[piv], m[col]);
      for (std::size_t r = 0; r < nv; ++r) {
        if (r == col || m[r][col] == 0) continue;
        Rational f = m[r][col] / m[col][col];
        for (std::size_t c = col; c <= nv; ++c) m[r][c] -= f * m[col][c];
      }
    }
    if (singular) continue;
    std::vector<Rational> x(nv);
    for (std::size_t j = 0; j < nv; ++j) x[j] = m[j][nv] / m[j][j];
    bool feasible = true;
    for (const auto& r : rows) {
      Rational lhs = 0;
      for (std::size_t j = 0; j < nv; ++j) lhs += r.a[j] * x[j];
      feasible &= lhs >= r.b;
    }
    if (!feasible) continue;
    Rational obj = 0;
    for (std::size_t j = 0; j < nv; ++j) obj += lp.objective[j] * x[j];
    if (!best || obj < *best) best = obj;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

Coloring from_classes(int n, std::vector<std::vector<std::pair<int, int>>> classes) {
  Coloring c(n);
  for (std::size_t col = 0; col < classes.size(); ++col) {
    for (auto [u, v] : classes[col]) c.set(u, v, static_cast<Color>(col));
  }
  return c;
}

}  // namespace

TEST_CASE("census examples") {
  auto s = census(from_classes(5, {{{0, 1}, {1, 2}}, {{3, 4}}}));
  CHECK(s == Census{1, 1, 0, 0, 0, 0, 0});

  s = census(from_classes(5, {{{0, 1}, {1, 2}}, {{0, 2}, {1, 3}}}));
  // {0,2,1,3} in color 1 forms a P4, so build the two P3s explicitly.
  s = census(from_classes(5, {{{0, 1}, {1, 2}}, {{0, 3}, {1, 3}}}));
  CHECK(s.b2 == 2);
  CHECK(s.b1 == 0);

  s = census(from_classes(5, {{{0, 1}, {0, 2}, {0, 3}}}));
  CHECK(s.d == 1);

  s = census(from_classes(4, {{{0, 1}, {1, 2}, {2, 0}}, {{0, 3}, {1, 3}, {2, 3}}}));
  CHECK(s.e == 1);
  CHECK(s.d == 1);
}

TEST_CASE("check_pair_identity") {
  CHECK(check_pair_identity(Census{10, 0, 0, 0, 0, 0, 0}, 5));
  CHECK(check_pair_identity(Census{8, 1, 0, 0, 0, 0, 0}, 5));
  CHECK_FALSE(check_pair_identity(Census{7, 1, 0, 0, 0, 0, 0}, 5));
  CHECK_THROWS_WITH_AS(check_pair_identity(Census{7, 0, 0, 0, 0, 1, 0}, 5),
                       doctest::Contains("e=1"), InputError);
  CHECK_THROWS_WITH_AS(check_pair_identity(Census{7, 0, 0, 0, 0, 0, 2}, 5),
                       doctest::Contains("other=2"), InputError);
}

TEST_CASE("check_inequalities") {
  CHECK(check_inequalities(Census{1, 1, 0, 0, 0, 0, 0}, 10, 5).supply);
  CHECK_FALSE(check_inequalities(Census{1, 2, 0, 0, 0, 0, 0}, 10, 5).supply);
  // b2/2 is exact: a=1, b2=2 holds, b2=3 fails.
  CHECK(check_inequalities(Census{1, 0, 2, 0, 0, 0, 0}, 10, 5).supply);
  CHECK_FALSE(check_inequalities(Census{1, 0, 3, 0, 0, 0, 0}, 10, 5).supply);

  auto f = check_inequalities(Census{28, 0, 0, 0, 0, 0, 0}, 7, 8);
  CHECK(f.star_slack);  // 56 - 56 = 0 >= 0
  CHECK(f.path_slack);  // 0 >= -56
  CHECK_FALSE(check_inequalities(Census{0, 0, 0, 0, 1, 0, 0}, 7, 8).star_slack);
  CHECK_FALSE(check_inequalities(Census{0, 5, 0, 0, 0, 0, 0}, 7, 8).path_slack);
}

TEST_CASE("mono_triangle_bound") {
  CHECK(mono_triangle_bound(5) == 7);
  CHECK(mono_triangle_bound(10) == 22);
  CHECK(mono_triangle_bound(4) == 4);
  CHECK_THROWS_AS(mono_triangle_bound(3), InputError);
}

TEST_CASE("normalized program optimum is -2/7 with a verified certificate") {
  auto lp = build_pairs_lp(Rational(1));
  auto r = solve_lp_exact(lp);
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.optimum == Rational(-2, 7));
  CHECK(check_certificate(lp, r).ok());
  REQUIRE(vertex_enumeration_optimum(lp));
  CHECK(*vertex_enumeration_optimum(lp) == Rational(-2, 7));

  // The optimum is degenerate; the hand-solved witness binds both P rows,
  // P = -b1 = -2a + 2b1, and scores the same objective.
  LPResult hand = r;
  hand.witness = {Rational(3, 7), Rational(2, 7), 0, 0, 0, Rational(-2, 7)};
  CHECK(hand.witness[5] == -hand.witness[1]);
  CHECK(hand.witness[5] == -2 * hand.witness[0] + 2 * hand.witness[1]);
  CHECK(check_certificate(lp, hand).ok());
  CHECK(r.witness[5] == Rational(-2, 7));

  // A perturbed dual must fail the check.
  auto tampered = r;
  tampered.dual[2] += Rational(1, 100);
  CHECK_FALSE(check_certificate(lp, tampered).ok());
}

TEST_CASE("program for n=8 and homogeneity") {
  auto lp8 = build_lower_bound_lp(8);
  auto r8 = solve_lp_exact(lp8);
  REQUIRE(r8.status == LPStatus::Optimal);
  CHECK(r8.optimum == -8);
  CHECK(check_certificate(lp8, r8).ok());
  CHECK(*vertex_enumeration_optimum(lp8) == -8);

  const auto norm = solve_lp_exact(build_pairs_lp(Rational(1))).optimum;
  for (long long n : {5LL, 9LL, 31LL, 200LL}) {
    auto r = solve_lp_exact(build_lower_bound_lp(n));
    CHECK(r.optimum == norm * Rational(n * (n - 1) / 2));
  }
}

TEST_CASE("extra constraint P >= 0 gives optimum 0") {
  auto lp = build_lower_bound_lp(8);
  lp.add("P>=0", {0, 0, 0, 0, 0, 1}, Sense::Ge, 0);
  auto r = solve_lp_exact(lp);
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.optimum == 0);
  CHECK(check_certificate(lp, r).ok());
}

TEST_CASE("solver status on infeasible and unbounded programs") {
  LinearProgram lp;
  lp.names = {"x", "y"};
  lp.free = {false, true};
  lp.objective = {1, 1};
  lp.add("lo", {1, 0}, Sense::Ge, 2);
  lp.add("hi", {1, 0}, Sense::Le, 1);
  CHECK(solve_lp_exact(lp).status == LPStatus::Infeasible);

  LinearProgram un;
  un.names = {"x", "y"};
  un.free = {false, true};
  un.objective = {0, 1};
  un.add("sum", {1, 1}, Sense::Le, 3);
  CHECK(solve_lp_exact(un).status == LPStatus::Unbounded);

  // Negative right-hand sides, a redundant equality and Le rows.
  LinearProgram mixed;
  mixed.names = {"x", "y"};
  mixed.free = {false, false};
  mixed.objective = {-1, -2};
  mixed.add("e1", {1, 1}, Sense::Eq, 4);
  mixed.add("e2", {-2, -2}, Sense::Eq, -8);
  mixed.add("cap", {0, 1}, Sense::Le, 3);
  mixed.add("neg", {-1, 0}, Sense::Le, -1);
  auto r = solve_lp_exact(mixed);
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.optimum == -7);
  CHECK(check_certificate(mixed, r).ok());
}

TEST_CASE("lower_bound") {
  CHECK(lower_bound(8) == 6);
  CHECK(lower_bound(15) == 12);
  CHECK(lower_bound(5) == 4);
  for (long long n = 5; n <= 400; ++n) {
    REQUIRE(lower_bound(n) == (6 * (n - 1) + 6) / 7);
  }
  CHECK_THROWS_AS(lower_bound(4), InputError);
  auto cert = lower_bound_certificate(1000000);
  CHECK(cert.ratio == Rational(-2, 7));
  CHECK(cert.bound == (6 * (1000000LL - 1) + 6) / 7);
  CHECK(lp_report(build_pairs_lp(Rational(1)), cert.normalized).rfind("optimum -2/7; witness a=", 0) == 0);
}
