#pragma once

#include <Eigen/Dense>

#include "privbid/common.hpp"
#include "privbid/rng.hpp"

namespace privbid {

enum class MMode { Diagonal, General };

/// Samples an M-matrix. GENERAL mode draws a nonnegative matrix N and
/// returns s I - N with s = (1 + u) * maxRowSum(N), u in (0, 1]; the row-sum
/// bound dominates the spectral radius, so s exceeds it. DIAGONAL mode draws
/// a positive diagonal, which is the subset of M-matrices that also preserves
/// inequality systems exactly.
inline Mat sample_m_matrix(int dim, Rng& rng, MMode mode) {
  require(dim >= 1, "m-matrix: dim >= 1");
  if (mode == MMode::Diagonal) {
    Mat m = Mat::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) m(i, i) = rng.uniform(0.5, 2.0);
    return m;
  }
  Mat n(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) n(i, j) = rng.uniform(0.0, 1.0);
  double row_sum = n.rowwise().sum().maxCoeff();
  double u = 1.0 - rng.uniform(0.0, 1.0);  // (0, 1]
  double s = row_sum > 0 ? (1.0 + u) * row_sum : u;
  Mat m = -n;
  m.diagonal().array() += s;
  return m;
}

/// The characterizing check: a nonsingular M-matrix has an entrywise
/// nonnegative inverse. Returns the smallest inverse entry through
/// `min_entry` when requested.
inline bool inverse_nonnegative(const Mat& m, double eps = 1e-9,
                                double* min_entry = nullptr) {
  Eigen::FullPivLU<Mat> lu(m);
  if (!lu.isInvertible()) return false;
  Mat inv = lu.inverse();
  double lo = inv.minCoeff();
  if (min_entry) *min_entry = lo;
  return lo >= -eps;
}

}  // namespace privbid
