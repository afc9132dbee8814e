#include "r58/lp.hpp"

#include <sstream>
#include <stdexcept>

#include "r58/graph.hpp"

namespace r58 {

void LinearProgram::add(std::string name, std::vector<Rational> coeffs, Sense sense, Rational rhs) {
  if (coeffs.size() != variables()) throw InputError("constraint " + name + " has wrong arity");
  constraints.push_back({std::move(name), std::move(coeffs), sense, std::move(rhs)});
}

const char* status_name(LPStatus s) {
  switch (s) {
    case LPStatus::Optimal: return "optimal";
    case LPStatus::Infeasible: return "infeasible";
    case LPStatus::Unbounded: return "unbounded";
  }
  return "?";
}

namespace {

// Dense tableau in standard form: rows T x = rhs, x >= 0. Columns are the
// structural/slack columns followed by one artificial per row, whose
// columns in the current tableau hold B^{-1}.
struct Tableau {
  std::size_t rows = 0;
  std::size_t cols = 0;  // structural + slack
  std::vector<std::vector<Rational>> t;  // rows x (cols + rows + 1)
  std::vector<std::size_t> basis;
  std::vector<bool> active;  // false for redundant rows dropped after phase 1

  std::size_t width() const { return cols + rows; }
  Rational& rhs(std::size_t r) { return t[r][cols + rows]; }

  void pivot(std::size_t r, std::size_t col) {
    const Rational piv = t[r][col];
    for (auto& x : t[r]) x /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || t[i][col] == 0) continue;
      const Rational f = t[i][col];
      for (std::size_t j = 0; j < t[i].size(); ++j) {
        if (t[r][j] != 0) t[i][j] -= f * t[r][j];
      }
    }
    basis[r] = col;
  }

  Rational reduced_cost(const std::vector<Rational>& cost, std::size_t col) const {
    Rational z = cost[col];
    for (std::size_t i = 0; i < rows; ++i) {
      if (active[i]) z -= cost[basis[i]] * t[i][col];
    }
    return z;
  }

  // Bland's rule. Returns false when unbounded.
  bool optimize(const std::vector<Rational>& cost, bool allow_artificial) {
    const std::size_t limit = allow_artificial ? width() : cols;
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (reduced_cost(cost, j) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return true;
      std::size_t leave = rows;
      Rational best;
      for (std::size_t i = 0; i < rows; ++i) {
        if (!active[i] || t[i][enter] <= 0) continue;
        Rational ratio = rhs(i) / t[i][enter];
        if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows) return false;
      pivot(leave, enter);
    }
  }
};

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

LPResult solve_lp_exact(const LinearProgram& lp) {
  const std::size_t nv = lp.variables();
  if (lp.objective.size() != nv || lp.free.size() != nv) throw InputError("malformed linear program");
  const std::size_t m = lp.constraints.size();

  // Column layout: x_j (or x_j+, x_j- when free), then one slack per
  // inequality row.
  std::vector<std::size_t> plus(nv), minus(nv, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < nv; ++j) {
    plus[j] = cols++;
    if (lp.free[j]) minus[j] = cols++;
  }
  std::vector<std::size_t> slack(m, SIZE_MAX);
  for (std::size_t r = 0; r < m; ++r) {
    if (lp.constraints[r].sense != Sense::Eq) slack[r] = cols++;
  }

  Tableau tab;
  tab.rows = m;
  tab.cols = cols;
  tab.t.assign(m, std::vector<Rational>(cols + m + 1, Rational(0)));
  tab.basis.resize(m);
  tab.active.assign(m, true);
  std::vector<int> flip(m, 1);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& con = lp.constraints[r];
    if (con.coeffs.size() != nv) throw InputError("constraint " + con.name + " has wrong arity");
    auto& row = tab.t[r];
    for (std::size_t j = 0; j < nv; ++j) {
      row[plus[j]] = con.coeffs[j];
      if (minus[j] != SIZE_MAX) row[minus[j]] = -con.coeffs[j];
    }
    if (con.sense == Sense::Ge) row[slack[r]] = -1;
    if (con.sense == Sense::Le) row[slack[r]] = 1;
    row[cols + m] = con.rhs;
    if (con.rhs < 0) {
      flip[r] = -1;
      for (auto& x : row) x = -x;
    }
    row[cols + r] = 1;
    tab.basis[r] = cols + r;
  }

  LPResult result;
  std::vector<Rational> phase1(cols + m, Rational(0));
  for (std::size_t r = 0; r < m; ++r) phase1[cols + r] = 1;
  tab.optimize(phase1, true);
  Rational infeasibility = 0;
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis[r] >= cols) infeasibility += tab.rhs(r);
  }
  if (infeasibility != 0) {
    result.status = LPStatus::Infeasible;
    return result;
  }
  // Drive remaining (zero-level) artificials out of the basis.
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis[r] < cols) continue;
    std::size_t col = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (tab.t[r][j] != 0) {
        col = j;
        break;
      }
    }
    if (col == cols) tab.active[r] = false;
    else tab.pivot(r, col);
  }

  std::vector<Rational> cost(cols + m, Rational(0));
  for (std::size_t j = 0; j < nv; ++j) {
    cost[plus[j]] = lp.objective[j];
    if (minus[j] != SIZE_MAX) cost[minus[j]] = -lp.objective[j];
  }
  if (!tab.optimize(cost, false)) {
    result.status = LPStatus::Unbounded;
    return result;
  }

  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.active[r] && tab.basis[r] < cols) x[tab.basis[r]] = tab.rhs(r);
  }
  result.status = LPStatus::Optimal;
  result.witness.resize(nv);
  for (std::size_t j = 0; j < nv; ++j) {
    result.witness[j] = x[plus[j]];
    if (minus[j] != SIZE_MAX) result.witness[j] -= x[minus[j]];
  }
  result.optimum = dot(lp.objective, result.witness);
  result.dual.assign(m, Rational(0));
  for (std::size_t r = 0; r < m; ++r) {
    Rational y = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.active[i]) y += cost[tab.basis[i]] * tab.t[i][cols + r];
    }
    result.dual[r] = y * flip[r];
  }
  return result;
}

CertificateCheck check_certificate(const LinearProgram& lp, const LPResult& r) {
  CertificateCheck chk;
  if (r.status != LPStatus::Optimal) return chk;
  const std::size_t nv = lp.variables();
  const std::size_t m = lp.constraints.size();
  if (r.witness.size() != nv || r.dual.size() != m) return chk;

  chk.primal_feasible = true;
  for (std::size_t j = 0; j < nv; ++j) {
    if (!lp.free[j] && r.witness[j] < 0) chk.primal_feasible = false;
  }
  for (const auto& con : lp.constraints) {
    const Rational lhs = dot(con.coeffs, r.witness);
    switch (con.sense) {
      case Sense::Eq: chk.primal_feasible &= lhs == con.rhs; break;
      case Sense::Ge: chk.primal_feasible &= lhs >= con.rhs; break;
      case Sense::Le: chk.primal_feasible &= lhs <= con.rhs; break;
    }
  }

  chk.dual_feasible = true;
  for (std::size_t i = 0; i < m; ++i) {
    const auto sense = lp.constraints[i].sense;
    if (sense == Sense::Ge && r.dual[i] < 0) chk.dual_feasible = false;
    if (sense == Sense::Le && r.dual[i] > 0) chk.dual_feasible = false;
  }
  for (std::size_t j = 0; j < nv; ++j) {
    Rational col = 0;
    for (std::size_t i = 0; i < m; ++i) col += lp.constraints[i].coeffs[j] * r.dual[i];
    if (lp.free[j] ? col != lp.objective[j] : col > lp.objective[j]) chk.dual_feasible = false;
  }

  Rational dual_objective = 0;
  for (std::size_t i = 0; i < m; ++i) dual_objective += lp.constraints[i].rhs * r.dual[i];
  chk.objectives_match = dual_objective == r.optimum && dot(lp.objective, r.witness) == r.optimum;
  return chk;
}

LinearProgram build_pairs_lp(const Rational& pairs) {
  LinearProgram lp;
  lp.names = {"a", "b1", "b2", "c", "d", "P"};
  lp.free = {false, false, false, false, false, true};
  lp.objective = {0, 0, 0, 0, 0, 1};
  using R = Rational;
  lp.add("pairs", {R(1), R(2), R(2), R(3), R(3), R(0)}, Sense::Eq, pairs);
  lp.add("supply", {R(1), R(-1), R(-1, 2), R(-2), R(-3), R(0)}, Sense::Ge, R(0));
  lp.add("star_slack", {R(0), R(1), R(0), R(0), R(-1), R(1)}, Sense::Ge, R(0));
  lp.add("path_slack", {R(2), R(-2), R(4), R(6), R(2), R(1)}, Sense::Ge, R(0));
  return lp;
}

LinearProgram build_lower_bound_lp(long long n) {
  if (n < 2) throw InputError("lower-bound program requires n >= 2");
  return build_pairs_lp(Rational(n) * (n - 1) / 2);
}

std::string lp_report(const LinearProgram& lp, const LPResult& r) {
  std::ostringstream out;
  if (r.status != LPStatus::Optimal) {
    out << "status " << status_name(r.status);
    return out.str();
  }
  out << "optimum " << r.optimum.str() << "; witness ";
  for (std::size_t j = 0; j < lp.variables(); ++j) {
    out << (j ? ", " : "") << lp.names[j] << '=' << r.witness[j].str();
  }
  out << "; dual certificate ";
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    out << (i ? ", " : "") << lp.constraints[i].name << '=' << r.dual[i].str();
  }
  return out.str();
}

LowerBoundCertificate lower_bound_certificate(long long n) {
  if (n < 5) throw InputError("lower bound requires n >= 5");
  static const LPResult normalized = solve_lp_exact(build_pairs_lp(Rational(1)));
  if (normalized.status != LPStatus::Optimal) throw std::logic_error("normalized program not optimal");
  LowerBoundCertificate cert;
  cert.n = n;
  cert.pairs = Rational(n) * (n - 1) / 2;
  cert.normalized = normalized;
  cert.ratio = normalized.optimum;
  cert.optimum = normalized.optimum * cert.pairs;
  // m n >= 2 C(n,2) + optimum
  const Rational need = (2 * cert.pairs + cert.optimum) / n;
  const boost::multiprecision::cpp_int num = numerator(need), den = denominator(need);
  boost::multiprecision::cpp_int q = num / den;
  if (q * den < num) ++q;
  cert.bound = q.convert_to<long long>();
  return cert;
}

long long lower_bound(long long n) { return lower_bound_certificate(n).bound; }

}  // namespace r58
