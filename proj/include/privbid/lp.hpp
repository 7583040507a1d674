#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include "privbid/common.hpp"

namespace privbid {

enum class Rel : std::uint8_t { LE, EQ, GE };

enum class Group : std::uint8_t {
  SharedCap,    // joint capacity rows, one dual per shared capacity
  PartyCap,     // per-party capacity rows
  UpperBound,   // per-party upper-bound rows (when expressed as rows)
  LowerBound,   // per-party lower-bound rows
  NonNeg,       // per-party slack nonnegativity rows
  SparsityRow,  // covering rows of the sparsity pattern model
  SparsityCol,
  Other,
};

struct RowTag {
  Group group = Group::Other;
  int party = -1;  // -1 when the group is not party-scoped
  bool operator==(const RowTag&) const = default;
};

/// A maximization LP over bounded variables plus tagged general rows.
/// Box constraints may live either in (lower, upper) or as explicit rows;
/// model builders choose, and duals are reported for both representations.
struct LinearProgram {
  int num_vars = 0;
  Vec cost;           // maximize cost . x
  Vec lower, upper;   // per-variable bounds, +-inf allowed
  SpMat rows;         // num_rows x num_vars
  Vec rhs;
  std::vector<Rel> rel;
  std::vector<RowTag> tag;
  std::vector<int> var_party;  // -1 if unowned; used for per-party bound duals

  int num_rows() const { return static_cast<int>(rel.size()); }

  void check_shape() const {
    require(cost.size() == num_vars && lower.size() == num_vars &&
                upper.size() == num_vars,
            "lp: variable arrays disagree on dimension");
    require(rows.rows() == num_rows() && rows.cols() == num_vars,
            "lp: row matrix dimension mismatch");
    require(rhs.size() == num_rows() && tag.size() == rel.size(),
            "lp: row arrays disagree on dimension");
    require(static_cast<int>(var_party.size()) == num_vars,
            "lp: var_party dimension mismatch");
    for (int j = 0; j < num_vars; ++j)
      require(lower[j] <= upper[j] + 1e-12, "lp: crossed variable bounds");
  }
};

/// Incremental construction of a LinearProgram.
class LpBuilder {
 public:
  int add_var(double cost, double lo, double hi, int party = -1) {
    cost_.push_back(cost);
    lo_.push_back(lo);
    hi_.push_back(hi);
    party_.push_back(party);
    return static_cast<int>(cost_.size()) - 1;
  }
  int add_row(Rel rel, double rhs, RowTag tag = {}) {
    rel_.push_back(rel);
    rhs_.push_back(rhs);
    tag_.push_back(tag);
    return static_cast<int>(rel_.size()) - 1;
  }
  void set(int row, int var, double a) {
    if (a != 0.0) coef_.emplace_back(row, var, a);
  }
  int num_vars() const { return static_cast<int>(cost_.size()); }

  LinearProgram build() const {
    LinearProgram lp;
    lp.num_vars = static_cast<int>(cost_.size());
    lp.cost = Eigen::Map<const Vec>(cost_.data(), lp.num_vars);
    lp.lower = Eigen::Map<const Vec>(lo_.data(), lp.num_vars);
    lp.upper = Eigen::Map<const Vec>(hi_.data(), lp.num_vars);
    lp.var_party = party_;
    lp.rhs = Eigen::Map<const Vec>(rhs_.data(), rhs_.size());
    lp.rel = rel_;
    lp.tag = tag_;
    lp.rows.resize(static_cast<int>(rel_.size()), lp.num_vars);
    lp.rows.setFromTriplets(coef_.begin(), coef_.end());
    lp.rows.makeCompressed();
    lp.check_shape();
    return lp;
  }

 private:
  std::vector<double> cost_, lo_, hi_, rhs_;
  std::vector<int> party_;
  std::vector<Rel> rel_;
  std::vector<RowTag> tag_;
  std::vector<Triplet> coef_;
};

enum class LpStatus : std::uint8_t { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  Vec x;                 // primal values per variable
  Vec row_dual;          // per general row; max convention: LE >= 0, GE <= 0
  Vec reduced_cost;      // cost_j - a_j . row_dual
  Vec bound_dual_lower;  // >= 0, complementary to x_j >= lower_j
  Vec bound_dual_upper;  // >= 0, complementary to x_j <= upper_j

  // solver diagnostics
  int iterations = 0;
  int phase1_iterations = 0;
  double solve_ms = 0.0;
  double primal_residual = 0.0;  // worst relative row/bound violation
  double dual_residual = 0.0;    // worst stationarity violation
  double duality_gap = 0.0;      // |primal - dual| / (1 + |primal|)
  double cs_residual = 0.0;      // worst complementary slackness violation
};

/// Gathers the duals of all rows carrying (group, party) in row order.
inline Vec group_dual(const LinearProgram& lp, const LpSolution& sol,
                      Group group, int party = -1) {
  std::vector<double> v;
  for (int i = 0; i < lp.num_rows(); ++i)
    if (lp.tag[i].group == group && lp.tag[i].party == party)
      v.push_back(sol.row_dual[i]);
  return Eigen::Map<const Vec>(v.data(), v.size());
}

/// Upper-bound duals of the variables owned by `party` (box form).
inline Vec party_bound_dual_upper(const LinearProgram& lp,
                                  const LpSolution& sol, int party) {
  std::vector<double> v;
  for (int j = 0; j < lp.num_vars; ++j)
    if (lp.var_party[j] == party) v.push_back(sol.bound_dual_upper[j]);
  return Eigen::Map<const Vec>(v.data(), v.size());
}

/// Values of the variables owned by `party`.
inline Vec party_primal(const LinearProgram& lp, const LpSolution& sol,
                        int party) {
  std::vector<double> v;
  for (int j = 0; j < lp.num_vars; ++j)
    if (lp.var_party[j] == party) v.push_back(sol.x[j]);
  return Eigen::Map<const Vec>(v.data(), v.size());
}

struct SolutionCheck {
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double dual_sign_violation = 0.0;
  double duality_gap = 0.0;
  double cs_residual = 0.0;
  double dual_objective = 0.0;

  bool ok(double eps_feas = 1e-7, double eps_gap = 1e-7,
          double eps_cs = 1e-6) const {
    return primal_residual <= eps_feas && dual_residual <= 100 * eps_feas &&
           dual_sign_violation <= eps_feas && duality_gap <= 10 * eps_gap &&
           cs_residual <= eps_cs;
  }
};

/// Independent verification of an OPTIMAL solution against its LP:
/// feasibility, dual signs, stationarity, strong duality and complementary
/// slackness. Works for any (x, duals) pair, not only solver output.
inline SolutionCheck check_solution(const LinearProgram& lp,
                                    const LpSolution& sol) {
  SolutionCheck chk;
  const Vec act = lp.rows * sol.x;
  double cscale = 1.0 + lp.cost.cwiseAbs().maxCoeff();

  for (int i = 0; i < lp.num_rows(); ++i) {
    double scale = 1.0 + std::abs(lp.rhs[i]);
    double slack = lp.rhs[i] - act[i];  // >=0 feasible for LE
    double viol = 0.0;
    switch (lp.rel[i]) {
      case Rel::LE: viol = -slack; break;
      case Rel::GE: viol = slack; break;
      case Rel::EQ: viol = std::abs(slack); break;
    }
    chk.primal_residual = std::max(chk.primal_residual, viol / scale);
    double y = sol.row_dual[i];
    if (lp.rel[i] == Rel::LE)
      chk.dual_sign_violation = std::max(chk.dual_sign_violation, -y / cscale);
    if (lp.rel[i] == Rel::GE)
      chk.dual_sign_violation = std::max(chk.dual_sign_violation, y / cscale);
    chk.cs_residual =
        std::max(chk.cs_residual, std::abs(y * slack) / (scale * cscale));
  }
  for (int j = 0; j < lp.num_vars; ++j) {
    double lo = lp.lower[j], hi = lp.upper[j];
    if (std::isfinite(lo))
      chk.primal_residual =
          std::max(chk.primal_residual, (lo - sol.x[j]) / (1.0 + std::abs(lo)));
    if (std::isfinite(hi))
      chk.primal_residual =
          std::max(chk.primal_residual, (sol.x[j] - hi) / (1.0 + std::abs(hi)));
    chk.dual_sign_violation =
        std::max({chk.dual_sign_violation, -sol.bound_dual_lower[j] / cscale,
                  -sol.bound_dual_upper[j] / cscale});
    if (std::isfinite(hi))
      chk.cs_residual = std::max(
          chk.cs_residual, sol.bound_dual_upper[j] * (hi - sol.x[j]) /
                               ((1.0 + std::abs(hi)) * cscale));
    if (std::isfinite(lo))
      chk.cs_residual = std::max(
          chk.cs_residual, sol.bound_dual_lower[j] * (sol.x[j] - lo) /
                               ((1.0 + std::abs(lo)) * cscale));
  }

  // stationarity: cost - rows^T y = bound_dual_upper - bound_dual_lower
  Vec station = lp.cost - lp.rows.transpose() * sol.row_dual -
                sol.bound_dual_upper + sol.bound_dual_lower;
  if (lp.num_vars > 0)
    chk.dual_residual = station.cwiseAbs().maxCoeff() / cscale;

  double dual_obj = sol.row_dual.dot(lp.rhs);
  for (int j = 0; j < lp.num_vars; ++j) {
    if (sol.bound_dual_upper[j] != 0.0 && std::isfinite(lp.upper[j]))
      dual_obj += sol.bound_dual_upper[j] * lp.upper[j];
    if (sol.bound_dual_lower[j] != 0.0 && std::isfinite(lp.lower[j]))
      dual_obj -= sol.bound_dual_lower[j] * lp.lower[j];
  }
  chk.dual_objective = dual_obj;
  double primal_obj = lp.cost.dot(sol.x);
  chk.duality_gap =
      std::abs(primal_obj - dual_obj) / (1.0 + std::abs(primal_obj));
  return chk;
}

/// Coefficient-list text dump for cross-checking with external tools.
/// One line per nonzero: `a <row> <col> <value>`, plus objective, rhs,
/// relation and bound sections.
inline void dump_lp(const LinearProgram& lp, std::ostream& os) {
  os << "lp " << lp.num_rows() << " " << lp.num_vars << " max\n";
  for (int j = 0; j < lp.num_vars; ++j)
    if (lp.cost[j] != 0.0) os << "c " << j << " " << lp.cost[j] << "\n";
  for (int i = 0; i < lp.num_rows(); ++i) {
    const char* r = lp.rel[i] == Rel::LE ? "<=" : lp.rel[i] == Rel::GE ? ">=" : "=";
    os << "r " << i << " " << r << " " << lp.rhs[i] << "\n";
  }
  for (int k = 0; k < lp.rows.outerSize(); ++k)
    for (SpMat::InnerIterator it(lp.rows, k); it; ++it)
      os << "a " << it.row() << " " << it.col() << " " << it.value() << "\n";
  for (int j = 0; j < lp.num_vars; ++j)
    os << "b " << j << " " << lp.lower[j] << " " << lp.upper[j] << "\n";
}

}  // namespace privbid
