#pragma once

#include <algorithm>

#include "privbid/mask.hpp"

namespace privbid {

/// Everything an adversary reconstructs from one payload once the two row
/// multipliers G (upper bounds) and F (capacity rows) leak. The row
/// multipliers are always square, so the variable map falls out exactly even
/// for rectangular maps; the pseudo-inverse handles s > n and t > m.
/// If a column permutation was in use, the reconstruction lands in the
/// permuted coordinates — the permutation itself stays hidden.
struct AttackReconstruction {
  Mat var_map;            // D
  Mat slack_map;          // E
  Mat shared_use;         // A (permuted order)
  Mat private_use;        // B (permuted order)
  Mat lower_mult;         // H
  Vec primal_shift;       // eta
  Vec dual_shift;         // xi
  Vec revenue;            // r (permuted order)
  Vec private_capacity;   // c_k
  double max_residual = 0.0;  // consistency of the recovered systems
};

inline AttackReconstruction audit_attack(const MaskedPartyData& pd,
                                         const Mat& leaked_upper_mult,
                                         const Mat& leaked_cap_mult) {
  require(leaked_upper_mult.rows() == pd.n &&
              leaked_upper_mult.cols() == pd.n,
          "attack: leaked upper multiplier has wrong shape");
  require(leaked_cap_mult.rows() == pd.m_priv &&
              leaked_cap_mult.cols() == pd.m_priv,
          "attack: leaked capacity multiplier has wrong shape");

  Eigen::FullPivLU<Mat> glu(leaked_upper_mult);
  Eigen::FullPivLU<Mat> flu(leaked_cap_mult);
  require(pd.n == 0 || glu.isInvertible(), "attack: singular leaked G");
  require(pd.m_priv == 0 || flu.isInvertible(), "attack: singular leaked F");

  AttackReconstruction out;
  Mat dt = glu.solve(pd.upper_lhs);  // D^T, n x s
  out.var_map = dt.transpose();

  // right-inverse of D^T: multiply by D (D^T D)^-1
  Mat dtd = dt * dt.transpose();  // (n x n) = D^T D
  Eigen::FullPivLU<Mat> dlu(dtd);
  require(pd.n == 0 || dlu.isInvertible(), "attack: recovered map is singular");
  auto unmap = [&](const Mat& m) { return Mat(dlu.solve(dt * m.transpose()).transpose()); };

  out.shared_use = unmap(pd.masked_shared_use);
  out.lower_mult = unmap(pd.lower_lhs);
  Eigen::FullPivLU<Mat> hlu(out.lower_mult);
  require(pd.n == 0 || hlu.isInvertible(), "attack: recovered H is singular");
  out.primal_shift = hlu.solve(pd.lower_rhs);

  Mat fb = flu.solve(pd.masked_private_use);  // B D^T
  out.private_use = unmap(fb);
  out.slack_map = Mat(flu.solve(pd.masked_slack_map).transpose());  // E, t x m

  Mat ete = out.slack_map.transpose() * out.slack_map;
  Eigen::FullPivLU<Mat> elu(ete);
  require(pd.m_priv == 0 || elu.isInvertible(),
          "attack: recovered slack map is singular");
  out.dual_shift = elu.solve(out.slack_map.transpose() * pd.masked_dual_shift);

  Vec r_plus = dlu.solve(dt * pd.masked_revenue);  // r + B^T xi
  out.revenue = r_plus - out.private_use.transpose() * out.dual_shift;
  out.private_capacity =
      flu.solve(pd.masked_private_cap) - out.private_use * out.primal_shift;

  auto resid = [&](const Mat& lhs, const Mat& rhs) {
    if (lhs.size() == 0) return 0.0;
    return (lhs - rhs).cwiseAbs().maxCoeff();
  };
  out.max_residual = std::max({
      resid(pd.upper_lhs, leaked_upper_mult * dt),
      resid(pd.masked_shared_use, out.shared_use * dt),
      resid(pd.masked_private_use, leaked_cap_mult * out.private_use * dt),
      resid(pd.masked_slack_map, leaked_cap_mult * out.slack_map.transpose()),
      resid(pd.lower_lhs, out.lower_mult * dt),
  });
  return out;
}

/// Tiny-problem special case: with a single (transformed) product column the
/// upper-bound multiplier leaks from the payload alone, no key material
/// needed. Returns the 1x1 G.
inline double audit_single_column_upper_mult(const MaskedPartyData& pd) {
  require(pd.n == 1 && pd.s == 1, "single-column audit needs n = s = 1");
  require(pd.lower_lhs(0, 0) != 0.0, "single-column audit: degenerate payload");
  return pd.upper_rhs[0] -
         pd.upper_lhs(0, 0) * pd.lower_rhs[0] / pd.lower_lhs(0, 0);
}

}  // namespace privbid
