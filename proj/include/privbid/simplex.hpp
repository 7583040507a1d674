#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include <chrono>
#include <cmath>
#include <vector>

#include "privbid/lp.hpp"

namespace privbid {

struct SimplexOptions {
  double feas_tol = 1e-7;   // primal feasibility
  double opt_tol = 1e-7;    // reduced-cost optimality, scaled by |cost|
  double pivot_tol = 1e-9;  // smallest acceptable pivot magnitude
  int refactor_every = 100;
  long max_iters = 2000000;
  int degen_bland_threshold = 600;  // consecutive degenerate pivots
  bool presolve_singletons = true;  // fold single-nonzero rows into bounds
};

namespace detail {

struct Eta {
  int r;
  Vec abar;
};

// Basis factorization with product-form updates between refactorizations.
// Dense LU for small or dense bases, sparse LU otherwise; the masked models
// with dense keys are the main consumers of the dense path.
class BasisFactor {
  enum class Mode { Empty, Dense, Sparse };

 public:
  void refactor(const SpMat& basis) {
    etas_.clear();
    m_ = static_cast<int>(basis.rows());
    if (m_ == 0) {
      mode_ = Mode::Empty;
      return;
    }
    double density =
        static_cast<double>(basis.nonZeros()) / (static_cast<double>(m_) * m_);
    if (m_ <= 300 || density > 0.12) {
      mode_ = Mode::Dense;
      dense_.compute(Mat(basis));
    } else {
      mode_ = Mode::Sparse;
      sparse_.compute(basis);
      if (sparse_.info() != Eigen::Success) {
        mode_ = Mode::Dense;
        dense_.compute(Mat(basis));
      }
    }
  }

  // v := B^-1 v
  void ftran(Vec& v) {
    if (mode_ == Mode::Empty) return;
    if (mode_ == Mode::Dense) {
      Vec t = dense_.solve(v);
      v.swap(t);
    } else {
      Vec t = sparse_.solve(v);
      v.swap(t);
    }
    for (const Eta& e : etas_) {
      double t = v[e.r] / e.abar[e.r];
      v.noalias() -= t * e.abar;
      v[e.r] = t;
    }
  }

  // v := B^-T v
  void btran(Vec& v) {
    if (mode_ == Mode::Empty) return;
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double dot = it->abar.dot(v);
      v[it->r] -= (dot - v[it->r]) / it->abar[it->r];
    }
    if (mode_ == Mode::Dense) {
      Vec t = dense_.transpose().solve(v);
      v.swap(t);
    } else {
      Vec t = sparse_.transpose().solve(v);
      v.swap(t);
    }
  }

  void push(int r, Vec abar) { etas_.push_back({r, std::move(abar)}); }
  int eta_count() const { return static_cast<int>(etas_.size()); }

 private:
  Mode mode_ = Mode::Empty;
  Eigen::PartialPivLU<Mat> dense_;
  Eigen::SparseLU<SpMat> sparse_;
  std::vector<Eta> etas_;
  int m_ = 0;
};

// Two-phase bounded-variable revised simplex. Internally minimizes -cost.
class SimplexSolver {
  enum VStat : std::int8_t { kBasic, kAtLower, kAtUpper, kFree };
  enum class Step { Optimal, Unbounded };

 public:
  SimplexSolver(const LinearProgram& lp, const SimplexOptions& opt)
      : lp_(lp), opt_(opt) {
    lp_.check_shape();
  }

  LpSolution run() {
    auto t0 = std::chrono::steady_clock::now();
    LpSolution sol;
    if (!presolve()) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    setup();
    if (n_art_ > 0) {
      phase1_ = true;
      Step s = iterate();
      if (s == Step::Unbounded) throw Error("simplex: phase-1 unbounded");
      double infeas = 0.0;
      for (int a = 0; a < n_art_; ++a) infeas += value(n_ + m_ + a);
      double tol = opt_.feas_tol * (1.0 + b_scale_) * std::max(1.0, std::sqrt(m_));
      sol.phase1_iterations = iters_;
      if (infeas > tol) {
        sol.status = LpStatus::Infeasible;
        finish_time(sol, t0);
        return sol;
      }
      lock_artificials();
    }
    phase1_ = false;
    Step s = iterate();
    sol.iterations = iters_;
    if (s == Step::Unbounded) {
      sol.status = LpStatus::Unbounded;
      finish_time(sol, t0);
      return sol;
    }
    extract(sol);
    finish_time(sol, t0);
    return sol;
  }

 private:
  static void finish_time(LpSolution& sol,
                          std::chrono::steady_clock::time_point t0) {
    sol.solve_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  }

  // Folds rows with a single structural nonzero into variable bounds and
  // drops empty rows. Returns false on trivially detected infeasibility.
  bool presolve() {
    const int n = lp_.num_vars;
    fin_lo_ = lp_.lower;
    fin_hi_ = lp_.upper;
    conv_up_row_.assign(n, -1);
    conv_lo_row_.assign(n, -1);
    conv_up_coef_.assign(n, 0.0);
    conv_lo_coef_.assign(n, 0.0);
    conv_eq_row_.assign(n, -1);
    conv_eq_coef_.assign(n, 0.0);

    std::vector<int> nnz(lp_.num_rows(), 0);
    std::vector<int> only_var(lp_.num_rows(), -1);
    std::vector<double> only_coef(lp_.num_rows(), 0.0);
    for (int c = 0; c < lp_.rows.outerSize(); ++c)
      for (SpMat::InnerIterator it(lp_.rows, c); it; ++it) {
        ++nnz[it.row()];
        only_var[it.row()] = c;
        only_coef[it.row()] = it.value();
      }

    keep_.clear();
    for (int i = 0; i < lp_.num_rows(); ++i) {
      if (!opt_.presolve_singletons) {
        keep_.push_back(i);
        continue;
      }
      if (nnz[i] == 0) {
        double b = lp_.rhs[i];
        double tol = opt_.feas_tol * (1.0 + std::abs(b));
        bool ok = (lp_.rel[i] == Rel::LE && b >= -tol) ||
                  (lp_.rel[i] == Rel::GE && b <= tol) ||
                  (lp_.rel[i] == Rel::EQ && std::abs(b) <= tol);
        if (!ok) return false;
        continue;  // dropped; dual stays zero
      }
      if (nnz[i] != 1) {
        keep_.push_back(i);
        continue;
      }
      int j = only_var[i];
      double a = only_coef[i];
      double v = lp_.rhs[i] / a;
      Rel rel = lp_.rel[i];
      bool as_upper = (rel == Rel::LE && a > 0) || (rel == Rel::GE && a < 0);
      bool as_lower = (rel == Rel::GE && a > 0) || (rel == Rel::LE && a < 0);
      if (rel == Rel::EQ) {
        if (v < fin_lo_[j] - bound_tol(v) || v > fin_hi_[j] + bound_tol(v))
          return false;
        fin_lo_[j] = fin_hi_[j] = v;
        conv_eq_row_[j] = i;
        conv_eq_coef_[j] = a;
      } else if (as_upper) {
        if (v < fin_hi_[j]) {
          fin_hi_[j] = v;
          conv_up_row_[j] = i;
          conv_up_coef_[j] = a;
        }
      } else if (as_lower) {
        if (v > fin_lo_[j]) {
          fin_lo_[j] = v;
          conv_lo_row_[j] = i;
          conv_lo_coef_[j] = a;
        }
      }
    }
    for (int j = 0; j < n; ++j)
      if (fin_lo_[j] > fin_hi_[j] + bound_tol(fin_hi_[j])) return false;
    return true;
  }

  static double bound_tol(double v) { return 1e-9 * (1.0 + std::abs(v)); }

  void setup() {
    n_ = lp_.num_vars;
    m_ = static_cast<int>(keep_.size());
    b_ = Vec(m_);
    for (int i = 0; i < m_; ++i) b_[i] = lp_.rhs[keep_[i]];
    b_scale_ = m_ ? b_.cwiseAbs().maxCoeff() : 0.0;

    // internal matrix over structural + slack columns
    std::vector<Triplet> trip;
    trip.reserve(lp_.rows.nonZeros() + m_);
    std::vector<int> rowmap(lp_.num_rows(), -1);
    for (int i = 0; i < m_; ++i) rowmap[keep_[i]] = i;
    for (int c = 0; c < lp_.rows.outerSize(); ++c)
      for (SpMat::InnerIterator it(lp_.rows, c); it; ++it)
        if (rowmap[it.row()] >= 0)
          trip.emplace_back(rowmap[it.row()], c, it.value());
    for (int i = 0; i < m_; ++i) trip.emplace_back(i, n_ + i, 1.0);
    W_.resize(m_, n_ + m_);
    W_.setFromTriplets(trip.begin(), trip.end());
    W_.makeCompressed();

    lo_.assign(n_ + m_, 0.0);
    hi_.assign(n_ + m_, 0.0);
    cost2_.assign(n_ + m_, 0.0);
    for (int j = 0; j < n_; ++j) {
      lo_[j] = fin_lo_[j];
      hi_[j] = fin_hi_[j];
      cost2_[j] = -lp_.cost[j];  // minimize internally
    }
    for (int i = 0; i < m_; ++i) {
      switch (lp_.rel[keep_[i]]) {
        case Rel::LE: lo_[n_ + i] = 0.0; hi_[n_ + i] = kInf; break;
        case Rel::GE: lo_[n_ + i] = -kInf; hi_[n_ + i] = 0.0; break;
        case Rel::EQ: lo_[n_ + i] = 0.0; hi_[n_ + i] = 0.0; break;
      }
    }

    vstat_.assign(n_ + m_, kAtLower);
    xval_.assign(n_ + m_, 0.0);
    for (int j = 0; j < n_; ++j) {
      if (std::isfinite(lo_[j])) {
        vstat_[j] = kAtLower;
        xval_[j] = lo_[j];
      } else if (std::isfinite(hi_[j])) {
        vstat_[j] = kAtUpper;
        xval_[j] = hi_[j];
      } else {
        vstat_[j] = kFree;
        xval_[j] = 0.0;
      }
    }

    // residual with all structurals at their initial activity
    Vec r = b_;
    for (int j = 0; j < n_; ++j)
      if (xval_[j] != 0.0)
        for (SpMat::InnerIterator it(W_, j); it; ++it)
          r[it.row()] -= it.value() * xval_[j];

    // crash candidates: structural columns with a single row entry can host
    // that row's residual (explicit slack blocks land here)
    std::vector<int> col_nnz(n_, 0);
    std::vector<std::vector<int>> row_singletons(m_);
    for (int j = 0; j < n_; ++j) {
      int cnt = 0, row = -1;
      for (SpMat::InnerIterator it(W_, j); it; ++it) {
        ++cnt;
        row = static_cast<int>(it.row());
      }
      col_nnz[j] = cnt;
      if (cnt == 1) row_singletons[row].push_back(j);
    }

    basis_.assign(m_, -1);
    basis_pos_.assign(n_ + m_, -1);
    art_row_.clear();
    art_sign_.clear();
    xb_ = Vec::Zero(m_);
    for (int i = 0; i < m_; ++i) {
      int sc = n_ + i;
      double tol = opt_.feas_tol * (1.0 + std::abs(b_[i]));
      if (r[i] >= lo_[sc] - tol && r[i] <= hi_[sc] + tol) {
        basis_[i] = sc;
        xb_[i] = r[i];
        continue;
      }
      int host = -1;
      double host_val = 0.0;
      for (int j : row_singletons[i]) {
        if (hi_[j] - lo_[j] <= 0.0) continue;
        double a = 0.0;
        for (SpMat::InnerIterator it(W_, j); it; ++it) a = it.value();
        if (std::abs(a) < 1e-7) continue;
        double val = (r[i] + a * xval_[j]) / a;
        if (val >= lo_[j] - tol && val <= hi_[j] + tol) {
          host = j;
          host_val = val;
          break;
        }
      }
      if (host >= 0) {
        basis_[i] = host;
        xb_[i] = host_val;
        vstat_[host] = kBasic;
        xval_[host] = 0.0;
        vstat_[sc] = std::isfinite(lo_[sc]) ? kAtLower : kAtUpper;
        xval_[sc] = 0.0;
      } else {
        int ac = n_ + m_ + static_cast<int>(art_row_.size());
        art_row_.push_back(i);
        art_sign_.push_back(r[i] >= 0 ? 1.0 : -1.0);
        basis_[i] = ac;
        xb_[i] = std::abs(r[i]);
        vstat_[sc] = std::isfinite(lo_[sc]) ? kAtLower : kAtUpper;
        xval_[sc] = 0.0;
      }
    }
    n_art_ = static_cast<int>(art_row_.size());
    lo_.resize(n_ + m_ + n_art_, 0.0);
    hi_.resize(n_ + m_ + n_art_, kInf);
    cost2_.resize(n_ + m_ + n_art_, 0.0);
    vstat_.resize(n_ + m_ + n_art_, kAtLower);
    xval_.resize(n_ + m_ + n_art_, 0.0);
    basis_pos_.resize(n_ + m_ + n_art_, -1);
    for (int i = 0; i < m_; ++i) basis_pos_[basis_[i]] = i;

    refactorize();
    iters_ = 0;
  }

  void lock_artificials() {
    for (int a = 0; a < n_art_; ++a) {
      int c = n_ + m_ + a;
      hi_[c] = 0.0;
      if (basis_pos_[c] < 0) xval_[c] = 0.0;
    }
    // tiny residual infeasibility is absorbed by clamping
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= n_ + m_ && std::abs(xb_[i]) < 1e-6) xb_[i] = 0.0;
  }

  double phase_cost(int col) const {
    if (phase1_) return col >= n_ + m_ ? 1.0 : 0.0;
    return cost2_[col];
  }

  // dense column of the internal matrix in row space
  Vec dense_col(int col) const {
    Vec v = Vec::Zero(m_);
    if (col < n_ + m_) {
      for (SpMat::InnerIterator it(W_, col); it; ++it)
        v[it.row()] = it.value();
    } else {
      int a = col - n_ - m_;
      v[art_row_[a]] = art_sign_[a];
    }
    return v;
  }

  double col_dot(int col, const Vec& y) const {
    if (col < n_ + m_) {
      double s = 0.0;
      for (SpMat::InnerIterator it(W_, col); it; ++it)
        s += it.value() * y[it.row()];
      return s;
    }
    int a = col - n_ - m_;
    return art_sign_[a] * y[art_row_[a]];
  }

  double value(int col) const {
    return basis_pos_[col] >= 0 ? xb_[basis_pos_[col]] : xval_[col];
  }

  void refactorize() {
    std::vector<Triplet> trip;
    for (int i = 0; i < m_; ++i) {
      int c = basis_[i];
      if (c < n_ + m_) {
        for (SpMat::InnerIterator it(W_, c); it; ++it)
          trip.emplace_back(it.row(), i, it.value());
      } else {
        int a = c - n_ - m_;
        trip.emplace_back(art_row_[a], i, art_sign_[a]);
      }
    }
    SpMat B(m_, m_);
    B.setFromTriplets(trip.begin(), trip.end());
    factor_.refactor(B);
    recompute_basics();
    if (m_ > 0 && !xb_.allFinite()) throw Error("simplex: singular basis");
  }

  void recompute_basics() {
    Vec r = b_;
    for (int c = 0; c < n_ + m_ + n_art_; ++c) {
      if (basis_pos_[c] >= 0 || xval_[c] == 0.0) continue;
      if (c < n_ + m_) {
        for (SpMat::InnerIterator it(W_, c); it; ++it)
          r[it.row()] -= it.value() * xval_[c];
      } else {
        int a = c - n_ - m_;
        r[art_row_[a]] -= art_sign_[a] * xval_[c];
      }
    }
    factor_.ftran(r);
    xb_ = r;
  }

  Step iterate() {
    int degen_run = 0;
    bool bland = false;
    for (;;) {
      if (++iters_ > opt_.max_iters) throw Error("simplex: iteration limit");
      if (factor_.eta_count() >= opt_.refactor_every) refactorize();

      // pricing
      Vec cb(m_);
      for (int i = 0; i < m_; ++i) cb[i] = phase_cost(basis_[i]);
      Vec y = cb;
      factor_.btran(y);
      double cmax = 1.0;
      for (int c = 0; c < n_ + m_; ++c)
        cmax = std::max(cmax, std::abs(phase_cost(c)));
      const double dtol = opt_.opt_tol * cmax;

      int enter = -1, sig = 0;
      double best = dtol;
      const int scan_end = n_ + m_;  // artificials never re-enter
      for (int c = 0; c < scan_end; ++c) {
        if (basis_pos_[c] >= 0) continue;
        if (hi_[c] - lo_[c] <= 0.0) continue;  // fixed
        double d = phase_cost(c) - col_dot(c, y);
        int dir = 0;
        double score = 0.0;
        if (vstat_[c] == kAtLower && d < -dtol) {
          dir = +1;
          score = -d;
        } else if (vstat_[c] == kAtUpper && d > dtol) {
          dir = -1;
          score = d;
        } else if (vstat_[c] == kFree && std::abs(d) > dtol) {
          dir = d < 0 ? +1 : -1;
          score = std::abs(d);
        }
        if (dir == 0) continue;
        if (bland) {  // first favorable index
          enter = c;
          sig = dir;
          break;
        }
        if (score > best) {
          best = score;
          enter = c;
          sig = dir;
        }
      }
      if (enter < 0) return Step::Optimal;

      Vec abar = dense_col(enter);
      factor_.ftran(abar);

      // ratio test; the entering variable's own opposite bound competes
      // with the blocking basics (bound flip when it wins)
      double t = (std::isfinite(lo_[enter]) && std::isfinite(hi_[enter]))
                     ? hi_[enter] - lo_[enter]
                     : kInf;
      int leave_pos = -1;
      double leave_piv = 0.0;
      for (int i = 0; i < m_; ++i) {
        double a = abar[i];
        if (std::abs(a) <= opt_.pivot_tol) continue;
        double rate = -sig * a;
        int bc = basis_[i];
        double ti;
        if (rate < 0 && std::isfinite(lo_[bc]))
          ti = (xb_[i] - lo_[bc]) / (-rate);
        else if (rate > 0 && std::isfinite(hi_[bc]))
          ti = (hi_[bc] - xb_[i]) / rate;
        else
          continue;
        if (ti < 0) ti = 0;
        double tie = 1e-10 * (1.0 + std::min(std::abs(t), std::abs(ti)));
        if (ti < t - tie) {
          t = ti;
          leave_pos = i;
          leave_piv = a;
        } else if (ti <= t + tie && leave_pos >= 0) {
          bool take = bland ? basis_[i] < basis_[leave_pos]
                            : std::abs(a) > std::abs(leave_piv);
          if (take) {
            t = std::min(t, ti);
            leave_pos = i;
            leave_piv = a;
          }
        }
        // a tie against the entering bound itself keeps the cheap flip
      }
      bool flip = leave_pos < 0;
      if (!std::isfinite(t)) return Step::Unbounded;

      // apply the step
      double start = value(enter);
      if (t != 0.0) xb_.noalias() -= (sig * t) * abar;
      if (flip) {
        vstat_[enter] = sig > 0 ? kAtUpper : kAtLower;
        xval_[enter] = sig > 0 ? hi_[enter] : lo_[enter];
      } else {
        int lc = basis_[leave_pos];
        double rate = -sig * leave_piv;
        vstat_[lc] = rate < 0 ? kAtLower : kAtUpper;
        xval_[lc] = rate < 0 ? lo_[lc] : hi_[lc];
        basis_pos_[lc] = -1;
        basis_[leave_pos] = enter;
        basis_pos_[enter] = leave_pos;
        vstat_[enter] = kBasic;
        xb_[leave_pos] = start + sig * t;
        factor_.push(leave_pos, std::move(abar));
      }

      if (t <= 1e-11) {
        if (++degen_run >= opt_.degen_bland_threshold) bland = true;
      } else {
        degen_run = 0;
        bland = false;
      }
    }
  }

  void extract(LpSolution& sol) {
    // polish: exact basics from a fresh factorization, then re-check
    // optimality; bounded number of clean-up passes
    for (int pass = 0; pass < 3; ++pass) {
      refactorize();
      // quick re-price to confirm optimality after the recompute
      Vec cb(m_);
      for (int i = 0; i < m_; ++i) cb[i] = phase_cost(basis_[i]);
      Vec y = cb;
      factor_.btran(y);
      double cmax = 1.0;
      for (int c = 0; c < n_ + m_; ++c)
        cmax = std::max(cmax, std::abs(phase_cost(c)));
      bool clean = true;
      for (int c = 0; c < n_ + m_ && clean; ++c) {
        if (basis_pos_[c] >= 0 || hi_[c] - lo_[c] <= 0.0) continue;
        double d = phase_cost(c) - col_dot(c, y);
        double dtol = 10 * opt_.opt_tol * cmax;
        if ((vstat_[c] == kAtLower && d < -dtol) ||
            (vstat_[c] == kAtUpper && d > dtol) ||
            (vstat_[c] == kFree && std::abs(d) > dtol))
          clean = false;
      }
      if (clean) break;
      if (iterate() == Step::Unbounded)
        throw Error("simplex: unbounded during clean-up");
    }

    const int n = lp_.num_vars;
    sol.x = Vec(n);
    for (int j = 0; j < n; ++j) sol.x[j] = value(j);
    sol.objective = lp_.cost.dot(sol.x);

    Vec cb(m_);
    for (int i = 0; i < m_; ++i) cb[i] = cost2_[basis_[i]];
    Vec y = cb;
    factor_.btran(y);

    sol.row_dual = Vec::Zero(lp_.num_rows());
    for (int i = 0; i < m_; ++i) sol.row_dual[keep_[i]] = -y[i];

    // duals of rows folded into bounds during presolve
    Vec rc = lp_.cost - lp_.rows.transpose() * sol.row_dual;
    for (int j = 0; j < n; ++j) {
      if (conv_eq_row_[j] >= 0) {
        sol.row_dual[conv_eq_row_[j]] = rc[j] / conv_eq_coef_[j];
        continue;
      }
      double x = sol.x[j];
      if (conv_up_row_[j] >= 0 && rc[j] > 0 &&
          x >= fin_hi_[j] - bound_tol(fin_hi_[j]))
        sol.row_dual[conv_up_row_[j]] = rc[j] / conv_up_coef_[j];
      else if (conv_lo_row_[j] >= 0 && rc[j] < 0 &&
               x <= fin_lo_[j] + bound_tol(fin_lo_[j]))
        sol.row_dual[conv_lo_row_[j]] = rc[j] / conv_lo_coef_[j];
    }

    sol.reduced_cost = lp_.cost - lp_.rows.transpose() * sol.row_dual;
    sol.bound_dual_lower = Vec::Zero(n);
    sol.bound_dual_upper = Vec::Zero(n);
    for (int j = 0; j < n; ++j) {
      double r = sol.reduced_cost[j];
      if (r > 0 && std::isfinite(lp_.upper[j]) &&
          sol.x[j] >= lp_.upper[j] - bound_tol(lp_.upper[j]))
        sol.bound_dual_upper[j] = r;
      else if (r < 0 && std::isfinite(lp_.lower[j]) &&
               sol.x[j] <= lp_.lower[j] + bound_tol(lp_.lower[j]))
        sol.bound_dual_lower[j] = -r;
    }

    sol.status = LpStatus::Optimal;
    SolutionCheck chk = check_solution(lp_, sol);
    sol.primal_residual = chk.primal_residual;
    sol.dual_residual = chk.dual_residual;
    sol.duality_gap = chk.duality_gap;
    sol.cs_residual = chk.cs_residual;
  }

  LinearProgram lp_;
  SimplexOptions opt_;

  // presolve products
  Vec fin_lo_, fin_hi_;
  std::vector<int> keep_;
  std::vector<int> conv_up_row_, conv_lo_row_, conv_eq_row_;
  std::vector<double> conv_up_coef_, conv_lo_coef_, conv_eq_coef_;

  int n_ = 0, m_ = 0, n_art_ = 0;
  SpMat W_;
  Vec b_, xb_;
  double b_scale_ = 0.0;
  std::vector<double> lo_, hi_, cost2_, xval_;
  std::vector<VStat> vstat_;
  std::vector<int> basis_, basis_pos_, art_row_;
  std::vector<double> art_sign_;
  BasisFactor factor_;
  bool phase1_ = false;
  long iters_ = 0;
};

}  // namespace detail

/// Solves the LP, returning primal and dual optimal data.
/// INFEASIBLE / UNBOUNDED are statuses, not errors.
inline LpSolution solve(const LinearProgram& lp, const SimplexOptions& opt = {}) {
  detail::SimplexSolver solver(lp, opt);
  return solver.run();
}

}  // namespace privbid
