#pragma once

#include <vector>

#include "privbid/instance.hpp"
#include "privbid/lp.hpp"

namespace privbid {

/// Per-party shift vectors used by the shifted (slack-explicit) model.
struct PartyShift {
  Vec primal_shift;  // length n_k, added to the allocations
  Vec dual_shift;    // length m_k, added to the capacity duals
};

/// Capacity model wrapper: the LP plus enough layout to address party blocks
/// and pull grouped duals back out.
struct CapacityModel {
  LinearProgram lp;
  std::vector<int> var_begin;    // per party, plus total at the end
  std::vector<int> slack_begin;  // per party, -1 when absent (shifted model)
  int m_shared = 0;

  Vec shared_duals(const LpSolution& sol) const {
    return group_dual(lp, sol, Group::SharedCap, -1);
  }
  Vec party_duals(const LpSolution& sol, int k) const {
    return group_dual(lp, sol, Group::PartyCap, k);
  }
  Vec party_x(const LpSolution& sol, int k) const {
    int b = var_begin[k], e = var_begin[k + 1];
    int n = (slack_begin[k] >= 0 ? slack_begin[k] : e) - b;
    return sol.x.segment(b, n);
  }
  Vec party_slack(const LpSolution& sol, int k) const {
    require(slack_begin[k] >= 0, "model has no slack block");
    return sol.x.segment(slack_begin[k], var_begin[k + 1] - slack_begin[k]);
  }
};

/// Two algebraically identical writings of the capacity rows. Box keeps
/// B_k x_k <= c_k as inequality rows. Explicit writes B_k x_k + v_k = c_k
/// with v_k >= 0, mirroring the masked model's layout column for column and
/// row for row, so that with identity transforms the centralized and the
/// masked solves are the same LP and return the same optimal basis. Duals
/// are unaffected in value semantics (equality duals stay nonnegative
/// because v carries zero cost).
enum class SlackForm { Box, Explicit };

namespace detail {

/// Adds one party's variable block and capacity rows. `share_rows` are the
/// already-created shared-capacity row ids (possibly none for models without
/// a shared section).
inline void add_party_block(LpBuilder& b, const Blocks::PartyBlock& pb, int k,
                            SlackForm form, const std::vector<int>& share_rows,
                            std::vector<int>& var_begin,
                            std::vector<int>& slack_begin) {
  int x0 = b.num_vars();
  var_begin.push_back(x0);
  for (int j = 0; j < pb.n(); ++j) b.add_var(pb.revenue[j], 0.0, 1.0, k);
  int v0 = b.num_vars();
  if (form == SlackForm::Explicit) {
    slack_begin.push_back(v0);
    for (int i = 0; i < pb.m(); ++i) b.add_var(0.0, 0.0, kInf, k);
  } else {
    slack_begin.push_back(-1);
  }
  if (!share_rows.empty())
    for (int c = 0; c < pb.shared_use.outerSize(); ++c)
      for (SpMat::InnerIterator it(pb.shared_use, c); it; ++it)
        b.set(share_rows[it.row()], x0 + c, it.value());
  std::vector<int> prows;
  for (int i = 0; i < pb.m(); ++i) {
    int r = b.add_row(form == SlackForm::Explicit ? Rel::EQ : Rel::LE,
                      pb.private_capacity[i], {Group::PartyCap, k});
    if (form == SlackForm::Explicit) b.set(r, v0 + i, 1.0);
    prows.push_back(r);
  }
  for (int c = 0; c < pb.private_use.outerSize(); ++c)
    for (SpMat::InnerIterator it(pb.private_use, c); it; ++it)
      b.set(prows[it.row()], x0 + c, it.value());
}

}  // namespace detail

/// Joint model over all parties:
///   max sum_k r_k . x_k
///   s.t. sum_k A_k x_k <= c, B_k x_k <= c_k, 0 <= x_k <= 1.
inline CapacityModel build_collective(const Blocks& bl,
                                      SlackForm form = SlackForm::Box) {
  CapacityModel m;
  m.m_shared = bl.m();
  LpBuilder b;
  std::vector<int> shared_rows;
  for (int i = 0; i < bl.m(); ++i)
    shared_rows.push_back(
        b.add_row(Rel::LE, bl.shared_capacity[i], {Group::SharedCap, -1}));
  for (int k = 0; k < static_cast<int>(bl.party.size()); ++k)
    detail::add_party_block(b, bl.party[k], k, form, shared_rows, m.var_begin,
                            m.slack_begin);
  m.var_begin.push_back(b.num_vars());
  m.lp = b.build();
  return m;
}

/// One party's model under a fixed share s_k of the shared capacities:
///   max r_k . x  s.t.  A_k x <= s_k, B_k x <= c_k, 0 <= x <= 1.
inline CapacityModel build_individual(const Blocks& bl, int k,
                                      const Vec& share,
                                      SlackForm form = SlackForm::Box) {
  require(k >= 0 && k < static_cast<int>(bl.party.size()),
          "individual model: bad party");
  require(share.size() == bl.m(), "individual model: share length != m");
  require(share.size() == 0 || share.minCoeff() >= 0.0,
          "individual model: negative share");
  CapacityModel m;
  m.m_shared = bl.m();
  LpBuilder b;
  std::vector<int> shared_rows;
  for (int i = 0; i < bl.m(); ++i)
    shared_rows.push_back(
        b.add_row(Rel::LE, share[i], {Group::SharedCap, -1}));
  detail::add_party_block(b, bl.party[k], k, form, shared_rows, m.var_begin,
                          m.slack_begin);
  m.var_begin.push_back(b.num_vars());
  m.lp = b.build();
  return m;
}

/// Shift stage: substitute z = x + eta and make the private-capacity slack v
/// explicit with cost xi, so both the allocations and the capacity duals come
/// out displaced by private noise. Party k's block holds z_k then v_k.
///   max sum_k (r_k + B_k^T xi_k) . z_k + xi_k . v_k
///   s.t. sum_k A_k z_k <= c + sum_k A_k eta_k
///        B_k z_k + v_k = c_k + B_k eta_k
///        eta_k <= z_k <= 1 + eta_k,  v_k >= 0.
inline CapacityModel build_shifted(const Blocks& bl,
                                   const std::vector<PartyShift>& shift) {
  require(shift.size() == bl.party.size(), "shifted model: shift count");
  CapacityModel m;
  m.m_shared = bl.m();
  LpBuilder b;

  Vec shifted_c = bl.shared_capacity;
  for (std::size_t k = 0; k < bl.party.size(); ++k) {
    require(shift[k].primal_shift.size() == bl.party[k].n(),
            "shifted model: primal shift length");
    require(shift[k].dual_shift.size() == bl.party[k].m(),
            "shifted model: dual shift length");
    shifted_c += bl.party[k].shared_use * shift[k].primal_shift;
  }
  std::vector<int> srows;
  for (int i = 0; i < bl.m(); ++i)
    srows.push_back(b.add_row(Rel::LE, shifted_c[i], {Group::SharedCap, -1}));

  int nvar = 0;
  for (int k = 0; k < static_cast<int>(bl.party.size()); ++k) {
    const auto& pb = bl.party[k];
    const Vec& eta = shift[k].primal_shift;
    const Vec& xi = shift[k].dual_shift;
    m.var_begin.push_back(nvar);
    Vec zcost = pb.revenue + pb.private_use.transpose() * xi;
    for (int j = 0; j < pb.n(); ++j)
      b.add_var(zcost[j], eta[j], 1.0 + eta[j], k);
    for (int c = 0; c < pb.shared_use.outerSize(); ++c)
      for (SpMat::InnerIterator it(pb.shared_use, c); it; ++it)
        b.set(srows[it.row()], nvar + c, it.value());

    Vec crhs = pb.private_capacity + pb.private_use * eta;
    std::vector<int> prows;
    for (int i = 0; i < pb.m(); ++i)
      prows.push_back(b.add_row(Rel::EQ, crhs[i], {Group::PartyCap, k}));
    for (int c = 0; c < pb.private_use.outerSize(); ++c)
      for (SpMat::InnerIterator it(pb.private_use, c); it; ++it)
        b.set(prows[it.row()], nvar + c, it.value());

    m.slack_begin.push_back(nvar + pb.n());
    for (int i = 0; i < pb.m(); ++i) {
      int v = b.add_var(xi[i], 0.0, kInf, k);
      b.set(prows[i], v, 1.0);
    }
    nvar += pb.n() + pb.m();
  }
  m.var_begin.push_back(nvar);
  m.lp = b.build();
  return m;
}

/// Aggregates a party's column values to per-path totals.
inline std::vector<double> path_totals(const Blocks& bl, int k, const Vec& xk,
                                       int num_paths) {
  std::vector<double> tot(num_paths, 0.0);
  const auto& pb = bl.party[k];
  for (int j = 0; j < pb.n(); ++j) tot[pb.col_path[j]] += xk[j];
  return tot;
}

}  // namespace privbid
