#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace r58 {

using Rational = boost::multiprecision::cpp_rational;

enum class Sense { Eq, Ge, Le };

struct LinearConstraint {
  std::string name;
  std::vector<Rational> coeffs;
  Sense sense = Sense::Ge;
  Rational rhs;
};

/// minimize objective . x subject to the constraints; variables flagged
/// free are unrestricted, all others are nonnegative.
struct LinearProgram {
  std::vector<std::string> names;
  std::vector<bool> free;
  std::vector<Rational> objective;
  std::vector<LinearConstraint> constraints;

  std::size_t variables() const { return names.size(); }
  void add(std::string name, std::vector<Rational> coeffs, Sense sense, Rational rhs);
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

const char* status_name(LPStatus s);

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  Rational optimum;
  std::vector<Rational> witness;  // primal values, one per variable
  std::vector<Rational> dual;     // one multiplier per constraint
};

/// Two-phase simplex over exact rationals with Bland's rule. The dual
/// multipliers are read from the final basis.
LPResult solve_lp_exact(const LinearProgram& lp);

struct CertificateCheck {
  bool primal_feasible = false;
  bool dual_feasible = false;
  bool objectives_match = false;
  bool ok() const { return primal_feasible && dual_feasible && objectives_match; }
};

/// Verifies an optimal result by weak duality: the witness is feasible, the
/// multipliers are dual feasible, and both objectives agree.
CertificateCheck check_certificate(const LinearProgram& lp, const LPResult& r);

/// Continuous relaxation of the component-count program with
/// C(n,2) = pairs. Variables (a, b1, b2, c, d, P); P is free.
LinearProgram build_lower_bound_lp(long long n);
LinearProgram build_pairs_lp(const Rational& pairs);

/// "optimum p/q; witness a=..., ...; dual certificate eq1=..., ..."
std::string lp_report(const LinearProgram& lp, const LPResult& r);

struct LowerBoundCertificate {
  long long n = 0;
  Rational pairs;        // C(n,2)
  Rational optimum;      // optimum of the program for n
  Rational ratio;        // optimum / C(n,2)
  long long bound = 0;   // ceil((2 C(n,2) + optimum) / n)
  LPResult normalized;   // solution of the program with C(n,2) = 1
};

/// Solves the normalized program once and scales by C(n,2); n >= 5.
LowerBoundCertificate lower_bound_certificate(long long n);

/// Smallest color count allowed by the LP bound, ceil(6(n-1)/7); n >= 5.
long long lower_bound(long long n);

}  // namespace r58
