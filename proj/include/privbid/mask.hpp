#pragma once

#include <vector>

#include "privbid/keys.hpp"
#include "privbid/lp.hpp"
#include "privbid/models.hpp"

namespace privbid {

/// The blocks a party publishes. Contains only transformed data: no key
/// material and no plaintext field appears here by construction, except the
/// shared-capacity shift term the assembly step needs.
struct MaskedPartyData {
  int party = 0;
  int n = 0;        // original column count (masked row counts reveal it)
  int m_priv = 0;   // private capacity count
  int s = 0, t = 0; // transformed variable counts
  int m_shared = 0;

  Vec masked_revenue;      // D (r + B^T xi)             length s
  Vec masked_dual_shift;   // E xi                        length t
  Mat masked_shared_use;   // A D^T                       m_shared x s
  Mat masked_private_use;  // F B D^T                     m_priv x s
  Mat masked_slack_map;    // F E^T                       m_priv x t
  Vec masked_private_cap;  // F (c_k + B eta)             length m_priv
  Mat upper_lhs;           // G D^T                       n x s
  Vec upper_rhs;           // G (1 + eta)                 length n
  Mat lower_lhs;           // H D^T                       n x s
  Vec lower_rhs;           // H eta                       length n
  Mat nonneg_lhs;          // L E^T                       m_priv x t
  Vec shared_shift;        // A eta                       length m_shared

  /// r.eta + (c_k + B eta).xi — this party's share of the objective offset;
  /// published so every party can translate the masked optimum back.
  double objective_offset = 0.0;
};

/// Applies the full transformation chain for one party. The permutation, when
/// present, reorders the columns of A_k/B_k and the entries of r_k before the
/// variable map is applied; recovery undoes it.
inline MaskedPartyData mask(const Blocks& bl, int k, const MaskingKeys& keys) {
  require(k >= 0 && k < static_cast<int>(bl.party.size()), "mask: bad party");
  const auto& pb = bl.party[k];
  const int n = pb.n(), m = pb.m();
  require(keys.n() == n && keys.m() == m, "mask: key dimensions mismatch");
  require(keys.var_map.cols() == n && keys.slack_map.cols() == m,
          "mask: map dimensions mismatch");

  Mat a = Mat(pb.shared_use);
  Mat b = Mat(pb.private_use);
  Vec r = pb.revenue;
  if (!keys.perm.empty()) {
    require(static_cast<int>(keys.perm.size()) == n, "mask: bad permutation");
    Mat ap(a.rows(), n), bp(b.rows(), n);
    Vec rp(n);
    for (int j = 0; j < n; ++j) {
      ap.col(j) = a.col(keys.perm[j]);
      bp.col(j) = b.col(keys.perm[j]);
      rp[j] = r[keys.perm[j]];
    }
    a = std::move(ap);
    b = std::move(bp);
    r = std::move(rp);
  }

  const Vec& eta = keys.primal_shift;  // in permuted coordinates
  const Vec& xi = keys.dual_shift;
  const Mat dt = keys.var_map.transpose();  // n x s
  const Mat et = keys.slack_map.transpose();

  MaskedPartyData pd;
  pd.party = k;
  pd.n = n;
  pd.m_priv = m;
  pd.s = keys.s();
  pd.t = keys.t();
  pd.m_shared = bl.m();
  pd.masked_revenue = keys.var_map * (r + b.transpose() * xi);
  pd.masked_dual_shift = keys.slack_map * xi;
  pd.masked_shared_use = a * dt;
  pd.masked_private_use = keys.cap_mult * b * dt;
  pd.masked_slack_map = keys.cap_mult * et;
  pd.masked_private_cap = keys.cap_mult * (pb.private_capacity + b * eta);
  pd.upper_lhs = keys.upper_mult * dt;
  pd.upper_rhs = keys.upper_mult * (Vec::Ones(n) + eta);
  pd.lower_lhs = keys.lower_mult * dt;
  pd.lower_rhs = keys.lower_mult * eta;
  pd.nonneg_lhs = keys.nonneg_mult * et;
  pd.shared_shift = a * eta;
  pd.objective_offset =
      r.dot(eta) + (pb.private_capacity + b * eta).dot(xi);
  return pd;
}

/// The published model every party can assemble and solve on its own:
///   max sum_k rbar_k . u_k + xibar_k . w_k
///   s.t. sum_k Abar_k u_k <= c + sum_k A_k eta_k      (shared capacity)
///        Bbar_k u_k + Fbar_k w_k = cbar_k             (party capacity)
///        Gbar_k u_k <= 1bar_k                         (upper bounds)
///        Hbar_k u_k >= etabar_k                       (lower bounds)
///        Lbar_k w_k >= 0                              (slack sign)
/// with u_k, w_k free.
struct MaskedModel {
  LinearProgram lp;
  std::vector<MaskedPartyData> payloads;  // sorted by party id
  std::vector<int> u_begin, w_begin;
  int m_shared = 0;
  double total_offset = 0.0;

  Vec shared_duals(const LpSolution& sol) const {
    return group_dual(lp, sol, Group::SharedCap, -1);
  }
  Vec party_cap_duals(const LpSolution& sol, int k) const {
    return group_dual(lp, sol, Group::PartyCap, k);
  }
  Vec u(const LpSolution& sol, int k) const {
    return sol.x.segment(u_begin[k], payloads[k].s);
  }
  Vec w(const LpSolution& sol, int k) const {
    return sol.x.segment(w_begin[k], payloads[k].t);
  }
};

inline MaskedModel assemble_masked_model(std::vector<MaskedPartyData> payloads,
                                         const Vec& shared_capacity) {
  require(!payloads.empty(), "masked model: no payloads");
  std::sort(payloads.begin(), payloads.end(),
            [](const auto& a, const auto& b) { return a.party < b.party; });
  const int parties = static_cast<int>(payloads.size());
  for (int k = 0; k < parties; ++k) {
    require(payloads[k].party == k, "masked model: missing party payload");
    require(payloads[k].m_shared == shared_capacity.size(),
            "masked model: shared capacity length mismatch");
  }

  MaskedModel mm;
  mm.m_shared = static_cast<int>(shared_capacity.size());
  Vec cbar = shared_capacity;
  for (const auto& pd : payloads) cbar += pd.shared_shift;

  LpBuilder b;
  std::vector<int> srows;
  for (int i = 0; i < mm.m_shared; ++i)
    srows.push_back(b.add_row(Rel::LE, cbar[i], {Group::SharedCap, -1}));

  for (int k = 0; k < parties; ++k) {
    const auto& pd = payloads[k];
    int u0 = b.num_vars();
    for (int j = 0; j < pd.s; ++j)
      b.add_var(pd.masked_revenue[j], -kInf, kInf, k);
    mm.u_begin.push_back(u0);
    int w0 = b.num_vars();
    for (int j = 0; j < pd.t; ++j)
      b.add_var(pd.masked_dual_shift[j], -kInf, kInf, k);
    mm.w_begin.push_back(w0);

    for (int i = 0; i < mm.m_shared; ++i)
      for (int j = 0; j < pd.s; ++j)
        b.set(srows[i], u0 + j, pd.masked_shared_use(i, j));

    for (int i = 0; i < pd.m_priv; ++i) {
      int r = b.add_row(Rel::EQ, pd.masked_private_cap[i], {Group::PartyCap, k});
      for (int j = 0; j < pd.s; ++j)
        b.set(r, u0 + j, pd.masked_private_use(i, j));
      for (int j = 0; j < pd.t; ++j)
        b.set(r, mm.w_begin[k] + j, pd.masked_slack_map(i, j));
    }
    for (int i = 0; i < pd.n; ++i) {
      int r = b.add_row(Rel::LE, pd.upper_rhs[i], {Group::UpperBound, k});
      for (int j = 0; j < pd.s; ++j) b.set(r, u0 + j, pd.upper_lhs(i, j));
    }
    for (int i = 0; i < pd.n; ++i) {
      int r = b.add_row(Rel::GE, pd.lower_rhs[i], {Group::LowerBound, k});
      for (int j = 0; j < pd.s; ++j) b.set(r, u0 + j, pd.lower_lhs(i, j));
    }
    for (int i = 0; i < pd.m_priv; ++i) {
      int r = b.add_row(Rel::GE, 0.0, {Group::NonNeg, k});
      for (int j = 0; j < pd.t; ++j) b.set(r, mm.w_begin[k] + j, pd.nonneg_lhs(i, j));
    }
    mm.total_offset += pd.objective_offset;
  }
  mm.lp = b.build();
  mm.payloads = std::move(payloads);
  return mm;
}

/// What one party learns after the masked solve: its own allocations and
/// bid-prices, the common shared bid-prices, and the true optimum.
struct RecoveredOutputs {
  Vec allocation;          // x_k in original column order
  Vec shared_bid_prices;   // identical across parties
  Vec private_bid_prices;  // this party's capacity duals
  double total_value = 0.0;
};

inline RecoveredOutputs recover(const MaskedModel& mm, const LpSolution& sol,
                                int k, const MaskingKeys& keys) {
  require(sol.status == LpStatus::Optimal,
          "recover: masked solve was not optimal");
  const auto& pd = mm.payloads[k];
  require(keys.s() == pd.s && keys.t() == pd.t, "recover: key mismatch");

  RecoveredOutputs out;
  Vec x_perm = keys.var_map.transpose() * mm.u(sol, k) - keys.primal_shift;
  if (!keys.perm.empty()) {
    out.allocation = Vec(pd.n);
    for (int j = 0; j < pd.n; ++j) out.allocation[keys.perm[j]] = x_perm[j];
  } else {
    out.allocation = std::move(x_perm);
  }
  out.shared_bid_prices = mm.shared_duals(sol);
  out.private_bid_prices =
      keys.cap_mult.transpose() * mm.party_cap_duals(sol, k) - keys.dual_shift;
  out.total_value = sol.objective - mm.total_offset;
  return out;
}

}  // namespace privbid
