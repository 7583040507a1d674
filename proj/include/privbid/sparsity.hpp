#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "privbid/lp.hpp"
#include "privbid/rng.hpp"
#include "privbid/simplex.hpp"

namespace privbid {

/// Binary pattern for a sparsity-preserving variable map. Minimizes the
/// fill-in that the products with the incidence blocks would create: entry
/// (i, j) costs one plus the number of capacity rows that path column i
/// touches, and every row and every column of the pattern must keep at least
/// one nonzero so the randomized map has full rank.
struct SparsityPattern {
  Mat pattern;  // n x s, entries in {0, 1}
  double objective = 0.0;
  double max_integrality_gap = 0.0;
};

/// Solves the covering model as a plain LP. The constraint matrix is the
/// bipartite row/column incidence, which is totally unimodular, so the vertex
/// the solver returns must be integral; a non-integral vertex is a hard
/// error.
inline SparsityPattern solve_sparsity(const SpMat& shared_use,
                                      const SpMat& private_use, int s_cols,
                                      const SimplexOptions& sopt = {}) {
  const int n = static_cast<int>(shared_use.cols());
  require(private_use.cols() == n, "sparsity: block column mismatch");
  require(s_cols >= n, "sparsity: need s >= n");

  Vec col_weight = Vec::Ones(n);
  for (int c = 0; c < n; ++c) {
    for (SpMat::InnerIterator it(shared_use, c); it; ++it)
      col_weight[c] += 1.0;
    for (SpMat::InnerIterator it(private_use, c); it; ++it)
      col_weight[c] += 1.0;
  }

  LpBuilder b;
  // variable (i, j) at index i * s_cols + j
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < s_cols; ++j)
      b.add_var(-col_weight[i], 0.0, 1.0);  // minimize total weighted fill
  for (int i = 0; i < n; ++i) {
    int r = b.add_row(Rel::GE, 1.0, {Group::SparsityRow, -1});
    for (int j = 0; j < s_cols; ++j) b.set(r, i * s_cols + j, 1.0);
  }
  for (int j = 0; j < s_cols; ++j) {
    int r = b.add_row(Rel::GE, 1.0, {Group::SparsityCol, -1});
    for (int i = 0; i < n; ++i) b.set(r, i * s_cols + j, 1.0);
  }
  LpSolution sol = solve(b.build(), sopt);
  require(sol.status == LpStatus::Optimal, "sparsity: covering LP not optimal");

  SparsityPattern out;
  out.pattern = Mat::Zero(n, s_cols);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < s_cols; ++j) {
      double v = sol.x[i * s_cols + j];
      double gap = std::min(std::abs(v), std::abs(1.0 - v));
      out.max_integrality_gap = std::max(out.max_integrality_gap, gap);
      out.pattern(i, j) = v > 0.5 ? 1.0 : 0.0;
    }
  out.objective = -sol.objective;
  if (out.max_integrality_gap > 1e-6) {
    std::ostringstream os;
    os << "sparsity: non-integral vertex (gap " << out.max_integrality_gap
       << ", n=" << n << ", s=" << s_cols << ")";
    throw Error(os.str());
  }
  return out;
}

/// Hadamard-randomizes a binary pattern into a variable map D (s x n with
/// D^T = pattern o R), verifying full column rank and resampling R on
/// deficiency.
inline Mat randomize_pattern(const Mat& pattern, Rng& rng,
                             int max_attempts = 5) {
  const int n = static_cast<int>(pattern.rows());
  const int s = static_cast<int>(pattern.cols());
  if (n == 0 || s == 0) return Mat(s, n);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Mat dt(n, s);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < s; ++j)
        dt(i, j) = pattern(i, j) != 0.0 ? rng.uniform(0.5, 2.0) : 0.0;
    Eigen::ColPivHouseholderQR<Mat> qr(dt);
    qr.setThreshold(1e-10);
    if (qr.rank() == n) return dt.transpose();
  }
  throw Error("sparsity: randomized map stayed rank deficient");
}

struct SparsityReportRow {
  int party = 0;
  std::string mode;
  long long nnz_shared = 0;   // nonzeros of the masked shared block
  long long nnz_private = 0;  // nonzeros of the masked private block
  double density = 0.0;       // combined fill of the two blocks
  bool rank_ok = true;
};

inline long long count_nnz(const Mat& m, double tol = 1e-12) {
  long long c = 0;
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i) c += std::abs(m(i, j)) > tol;
  return c;
}

inline SparsityReportRow make_report_row(int party, const std::string& mode,
                                         const Mat& masked_shared,
                                         const Mat& masked_private,
                                         bool rank_ok) {
  SparsityReportRow row;
  row.party = party;
  row.mode = mode;
  row.nnz_shared = count_nnz(masked_shared);
  row.nnz_private = count_nnz(masked_private);
  double cells = static_cast<double>(masked_shared.size()) +
                 static_cast<double>(masked_private.size());
  row.density = cells > 0 ? (row.nnz_shared + row.nnz_private) / cells : 0.0;
  row.rank_ok = rank_ok;
  return row;
}

}  // namespace privbid
