#pragma once

#include <string>
#include <vector>

#include "privbid/instance.hpp"
#include "privbid/mmatrix.hpp"
#include "privbid/rng.hpp"
#include "privbid/sparsity.hpp"

namespace privbid {

/// How a party draws its private randomness. Defaults are rectangular maps
/// (a little wider than square) with diagonal row multipliers and a column
/// permutation, which is the configuration the security audit accepts.
struct KeyPolicy {
  int extra_cols_var = 2;    // s_k = n_k + extra
  int extra_cols_slack = 1;  // t_k = m_k + extra
  MMode m_mode = MMode::Diagonal;
  bool permute = true;
  bool sparse_var_map = false;  // structured D from the covering model
  bool identity = false;        // debugging: every transform is identity
  bool signed_dual_shift = false;  // sample xi over [-scale, scale] instead
  double primal_shift_scale = 1.0;
};

/// One party's private masking material. Never serialized into any payload.
struct MaskingKeys {
  Vec primal_shift;  // length n_k
  Vec dual_shift;    // length m_k, nonnegative unless the signed knob is set
  Mat var_map;       // s_k x n_k, full column rank
  Mat slack_map;     // t_k x m_k, full column rank
  Mat cap_mult;      // m_k x m_k M-matrix on the capacity equalities
  Mat upper_mult;    // n_k x n_k M-matrix on the upper bounds
  Mat lower_mult;    // n_k x n_k M-matrix on the lower bounds
  Mat nonneg_mult;   // m_k x m_k M-matrix on the slack nonnegativity
  std::vector<int> perm;  // permuted column j holds original column perm[j]

  std::vector<std::string> warnings;

  int n() const { return static_cast<int>(primal_shift.size()); }
  int m() const { return static_cast<int>(dual_shift.size()); }
  int s() const { return static_cast<int>(var_map.rows()); }
  int t() const { return static_cast<int>(slack_map.rows()); }
};

namespace detail {

inline Mat random_full_rank(int rows, int cols, Rng& rng,
                            int max_attempts = 5) {
  if (rows == 0 || cols == 0) return Mat(rows, cols);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
    Eigen::ColPivHouseholderQR<Mat> qr(m);
    qr.setThreshold(1e-10);
    if (qr.rank() == std::min(rows, cols)) return m;
  }
  throw Error("keys: random map stayed rank deficient");
}

inline bool is_identity_incidence(const SpMat& a) {
  if (a.rows() != a.cols()) return false;
  Mat d = Mat(a);
  return d.isApprox(Mat::Identity(a.rows(), a.cols()));
}

}  // namespace detail

inline MaskingKeys generate_keys(const Blocks& bl, int k, Rng& rng,
                                 const KeyPolicy& policy = {}) {
  require(k >= 0 && k < static_cast<int>(bl.party.size()), "keys: bad party");
  require(policy.extra_cols_var >= 0 && policy.extra_cols_slack >= 0,
          "keys: map sizes must be at least square");
  const auto& pb = bl.party[k];
  const int n = pb.n(), m = pb.m();
  MaskingKeys keys;

  if (policy.identity) {
    keys.primal_shift = Vec::Zero(n);
    keys.dual_shift = Vec::Zero(m);
    keys.var_map = Mat::Identity(n, n);
    keys.slack_map = Mat::Identity(m, m);
    keys.cap_mult = Mat::Identity(m, m);
    keys.upper_mult = Mat::Identity(n, n);
    keys.lower_mult = Mat::Identity(n, n);
    keys.nonneg_mult = Mat::Identity(m, m);
    return keys;
  }

  const int s = n + policy.extra_cols_var;
  const int t = m + policy.extra_cols_slack;

  keys.primal_shift = Vec::NullaryExpr(n, [&](Eigen::Index) {
    return rng.uniform(0.0, policy.primal_shift_scale);
  });
  double fare_scale = n > 0 ? pb.revenue.cwiseAbs().maxCoeff() : 1.0;
  if (fare_scale <= 0) fare_scale = 1.0;
  keys.dual_shift = Vec::NullaryExpr(m, [&](Eigen::Index) {
    return policy.signed_dual_shift ? rng.uniform(-fare_scale, fare_scale)
                                    : rng.uniform(0.0, fare_scale);
  });

  if (policy.sparse_var_map) {
    SparsityPattern pat = solve_sparsity(pb.shared_use, pb.private_use, s);
    keys.var_map = randomize_pattern(pat.pattern, rng);
  } else {
    keys.var_map = detail::random_full_rank(s, n, rng);
  }
  keys.slack_map = detail::random_full_rank(t, m, rng);

  keys.cap_mult = sample_m_matrix(std::max(m, 1), rng, policy.m_mode);
  keys.nonneg_mult = sample_m_matrix(std::max(m, 1), rng, policy.m_mode);
  keys.upper_mult = sample_m_matrix(std::max(n, 1), rng, policy.m_mode);
  keys.lower_mult = sample_m_matrix(std::max(n, 1), rng, policy.m_mode);
  if (m == 0) {
    keys.cap_mult.resize(0, 0);
    keys.nonneg_mult.resize(0, 0);
  }
  if (n == 0) {
    keys.upper_mult.resize(0, 0);
    keys.lower_mult.resize(0, 0);
  }

  if (policy.permute) {
    keys.perm.resize(n);
    std::iota(keys.perm.begin(), keys.perm.end(), 0);
    rng.shuffle(keys.perm.begin(), keys.perm.end());
  }

  if (n <= 2)
    keys.warnings.push_back("party size below privacy threshold");
  if (!policy.permute && detail::is_identity_incidence(pb.shared_use))
    keys.warnings.push_back("identity incidence exposes the variable map");
  return keys;
}

}  // namespace privbid
