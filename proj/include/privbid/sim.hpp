#pragma once

#include <atomic>
#include <thread>
#include <vector>

#include "privbid/models.hpp"
#include "privbid/protocol.hpp"

namespace privbid {

enum class Strategy { CP, CCS, IC };

inline const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::CP: return "cp";
    case Strategy::CCS: return "ccs";
    case Strategy::IC: return "ic";
  }
  return "?";
}

struct SimConfig {
  double rho = -1.0;  // <0: keep the instance's load factor
  int segments = 5;
  int replications = 100;
  std::uint64_t seed = 0;
  std::vector<Strategy> strategies = {Strategy::CP, Strategy::CCS,
                                      Strategy::IC};
  KeyPolicy ccs_keys;  // masking policy used by the private strategy
  SimplexOptions solver;
  int threads = 1;
};

struct BookingEvent {
  double time = 0.0;
  int path = 0;
  int product = 0;
};

/// Poisson rates and product-choice probabilities implied by the instance's
/// mean demands: lambda_s = sum_i d_is / T (scaled when the load factor is
/// overridden) and p_is = d_is / sum_i d_is.
struct ArrivalStream {
  std::vector<double> rate;
  std::vector<std::vector<double>> choice;
  double scale = 1.0;
};

inline ArrivalStream arrival_stream(const AllianceInstance& inst,
                                    double rho_override = -1.0) {
  ArrivalStream st;
  st.scale = (rho_override >= 0.0 && inst.config.rho > 0.0)
                 ? rho_override / inst.config.rho
                 : (rho_override == 0.0 ? 0.0 : 1.0);
  const double T = inst.config.horizon;
  for (const Path& p : inst.paths) {
    double total = 0.0;
    std::vector<double> probs;
    for (const Product& pr : p.products) total += pr.mean_demand;
    for (const Product& pr : p.products)
      probs.push_back(total > 0 ? pr.mean_demand / total : 0.0);
    st.rate.push_back(total / T * st.scale);
    st.choice.push_back(std::move(probs));
  }
  return st;
}

/// Booking requests over [0, T): one homogeneous Poisson stream per path,
/// each arrival carrying a product drawn from the path's choice
/// probabilities. Sorted by time; per-path substreams make the list
/// independent of path order and identical under a fixed seed.
inline std::vector<BookingEvent> generate_arrivals(const AllianceInstance& inst,
                                                   const ArrivalStream& st,
                                                   std::uint64_t seed) {
  const double T = inst.config.horizon;
  std::vector<BookingEvent> events;
  for (int s = 0; s < static_cast<int>(inst.paths.size()); ++s) {
    if (st.rate[s] <= 0.0) continue;
    Rng rng(derive_seed(seed, "arrivals", s));
    double t = rng.exponential(st.rate[s]);
    while (t < T) {
      double u = rng.uniform(0.0, 1.0);
      int prod = 0;
      double acc = 0.0;
      const auto& probs = st.choice[s];
      for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (u <= acc || i + 1 == probs.size()) {
          prod = static_cast<int>(i);
          break;
        }
      }
      events.push_back({t, s, prod});
      t += rng.exponential(st.rate[s]);
    }
  }
  std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) {
    return a.time != b.time ? a.time < b.time
                            : std::tie(a.path, a.product) <
                                  std::tie(b.path, b.product);
  });
  return events;
}

struct RepResult {
  double revenue = 0.0;
  long long accepts = 0;
  std::vector<double> solve_ms;      // one model solve per segment
  std::vector<char> decisions;       // 1 accept / 0 reject, per event
  std::vector<long long> leftover;   // remaining capacity per leg
  double protocol_overhead_ms = 0.0; // CCS: masking + recovery on top
};

namespace detail {

/// Instance snapshot with depleted capacities and remaining-horizon demand;
/// the reoptimized models are built from this.
inline AllianceInstance snapshot(const AllianceInstance& base,
                                 const std::vector<long long>& remaining,
                                 double demand_scale) {
  AllianceInstance cur = base;
  for (std::size_t l = 0; l < cur.legs.size(); ++l)
    cur.legs[l].capacity = remaining[l];
  for (Path& p : cur.paths)
    for (Product& pr : p.products) pr.mean_demand *= demand_scale;
  return cur;
}

struct BidPrices {
  // per leg; private entries are valid only for the owning party
  Vec shared;   // indexed by shared row
  std::vector<Vec> private_by_party;
};

inline double price_of(const AllianceInstance& inst, const Blocks& bl,
                       const BidPrices& bids, const Path& p) {
  double sum = 0.0;
  for (int leg : p.legs) {
    if (inst.legs[leg].owner == kShared) {
      for (int i = 0; i < bl.m(); ++i)
        if (bl.shared_legs[i] == leg) {
          sum += bids.shared[i];
          break;
        }
    } else {
      const auto& pb = bl.party[p.party];
      for (std::size_t i = 0; i < pb.private_legs.size(); ++i)
        if (pb.private_legs[i] == leg) {
          sum += bids.private_by_party[p.party][i];
          break;
        }
    }
  }
  return sum;
}

}  // namespace detail

/// One replication of one strategy over a fixed event list. The planning
/// horizon splits into equal segments; the strategy's model is rebuilt and
/// resolved at every segment start with depleted capacities and
/// remaining-horizon demand.
inline RepResult run_replication(const AllianceInstance& inst,
                                 const std::vector<BookingEvent>& events,
                                 const SimConfig& cfg, Strategy strat,
                                 std::uint64_t rep_seed) {
  const double T = inst.config.horizon;
  const int parties = inst.num_parties();
  const double scale = arrival_stream(inst, cfg.rho).scale;

  std::vector<long long> remaining(inst.legs.size());
  for (std::size_t l = 0; l < inst.legs.size(); ++l)
    remaining[l] = inst.legs[l].capacity;

  // per-party booking limits on shared legs (CCS and IC); CCS additionally
  // keeps the unallocated remainder of each shared leg as a common pool, so
  // floor rounding and forecast noise do not strand seats the joint model
  // never allocated. IC is a hard pre-split: no pooling.
  std::vector<std::vector<long long>> share;
  std::vector<long long> pool;
  bool use_share = strat != Strategy::CP;

  // IC: the shared capacity splits once, up front, by expected demand
  std::vector<std::vector<long long>> ic_share_left;
  if (strat == Strategy::IC) {
    Blocks bl0 = assemble_blocks(inst);
    ArrivalStream st = arrival_stream(inst, cfg.rho);
    ic_share_left.assign(parties, std::vector<long long>(bl0.m(), 0));
    for (int i = 0; i < bl0.m(); ++i) {
      int leg = bl0.shared_legs[i];
      std::vector<double> demand(parties, 0.0);
      double total = 0.0;
      int users = 0;
      for (std::size_t s = 0; s < inst.paths.size(); ++s) {
        const Path& p = inst.paths[s];
        if (std::find(p.legs.begin(), p.legs.end(), leg) == p.legs.end())
          continue;
        double d = st.rate[s] * T;
        demand[p.party] += d;
        total += d;
      }
      for (int k = 0; k < parties; ++k) users += demand[k] > 0;
      for (int k = 0; k < parties; ++k) {
        double frac = total > 0 ? demand[k] / total
                                : (users == 0 ? 1.0 / parties : 0.0);
        ic_share_left[k][i] = static_cast<long long>(
            std::floor(inst.legs[leg].capacity * frac + 1e-9));
      }
    }
  }

  RepResult rep;
  rep.decisions.reserve(events.size());
  detail::BidPrices bids;
  std::vector<Vec> ic_bids;  // per-party shared-leg duals (IC only)
  Blocks bl;
  std::size_t next_event = 0;

  for (int seg = 0; seg < cfg.segments; ++seg) {
    double t0 = T * seg / cfg.segments;
    double t1 = T * (seg + 1) / cfg.segments;
    double demand_scale = scale * (T - t0) / T;
    AllianceInstance cur = detail::snapshot(inst, remaining, demand_scale);
    bl = assemble_blocks(cur);

    bids.private_by_party.assign(parties, Vec());
    switch (strat) {
      case Strategy::CP: {
        // the explicit-slack form is the same LP the masked pipeline
        // assembles, so identity-key runs price capacity identically
        auto model = build_collective(bl, SlackForm::Explicit);
        LpSolution sol = solve(model.lp, cfg.solver);
        require(sol.status == LpStatus::Optimal, "sim: collective model failed");
        rep.solve_ms.push_back(sol.solve_ms);
        bids.shared = model.shared_duals(sol);
        for (int k = 0; k < parties; ++k)
          bids.private_by_party[k] = model.party_duals(sol, k);
        break;
      }
      case Strategy::CCS: {
        ProtocolOptions popt;
        popt.policy = cfg.ccs_keys;
        popt.actors = false;
        popt.solve_per_party = false;
        popt.solver = cfg.solver;
        auto res = run_protocol(bl, derive_seed(rep_seed, "ccs-keys", seg),
                                popt);
        rep.solve_ms.push_back(res.masked_solve_ms);
        rep.protocol_overhead_ms += res.wall_ms - res.masked_solve_ms;
        bids.shared = res.party[0].out.shared_bid_prices;
        share.assign(parties, std::vector<long long>(bl.m(), 0));
        for (int k = 0; k < parties; ++k) {
          bids.private_by_party[k] = res.party[k].out.private_bid_prices;
          Vec alloc = bl.party[k].shared_use *
                      res.party[k].out.allocation.cwiseMax(0.0);
          for (int i = 0; i < bl.m(); ++i)
            share[k][i] =
                static_cast<long long>(std::floor(alloc[i] + 1e-9));
        }
        pool.assign(bl.m(), 0);
        for (int i = 0; i < bl.m(); ++i) {
          long long allocated = 0;
          for (int k = 0; k < parties; ++k) allocated += share[k][i];
          pool[i] =
              std::max<long long>(0, remaining[bl.shared_legs[i]] - allocated);
        }
        break;
      }
      case Strategy::IC: {
        // remaining shares feed each party's own model
        bids.shared = Vec::Zero(bl.m());  // per-party values live below
        share = ic_share_left;
        double ms = 0.0;
        ic_bids.assign(parties, Vec());
        for (int k = 0; k < parties; ++k) {
          Vec sk(bl.m());
          for (int i = 0; i < bl.m(); ++i)
            sk[i] = static_cast<double>(share[k][i]);
          auto model = build_individual(bl, k, sk, SlackForm::Explicit);
          LpSolution sol = solve(model.lp, cfg.solver);
          require(sol.status == LpStatus::Optimal,
                  "sim: individual model failed");
          ms += sol.solve_ms;
          ic_bids[k] = model.shared_duals(sol);
          bids.private_by_party[k] = model.party_duals(sol, k);
        }
        rep.solve_ms.push_back(ms);
        break;
      }
    }

    // process this segment's bookings
    for (; next_event < events.size() && events[next_event].time < t1;
         ++next_event) {
      const BookingEvent& ev = events[next_event];
      const Path& p = inst.paths[ev.path];
      double fare = p.products[ev.product].fare;

      double bid;
      if (strat == Strategy::IC) {
        bid = 0.0;
        for (int leg : p.legs) {
          if (inst.legs[leg].owner == kShared) {
            for (int i = 0; i < bl.m(); ++i)
              if (bl.shared_legs[i] == leg) {
                bid += ic_bids[p.party][i];
                break;
              }
          } else {
            const auto& pb = bl.party[p.party];
            for (std::size_t i = 0; i < pb.private_legs.size(); ++i)
              if (pb.private_legs[i] == leg) {
                bid += bids.private_by_party[p.party][i];
                break;
              }
          }
        }
      } else {
        bid = detail::price_of(inst, bl, bids, p);
      }

      bool accept = fare >= bid - 1e-9;
      for (int leg : p.legs)
        if (remaining[leg] < 1) accept = false;
      if (accept && use_share) {
        bool from_pool = strat == Strategy::CCS;
        for (int leg : p.legs) {
          if (inst.legs[leg].owner != kShared) continue;
          for (int i = 0; i < bl.m(); ++i)
            if (bl.shared_legs[i] == leg) {
              bool ok = share[p.party][i] >= 1 ||
                        (from_pool && pool[i] >= 1);
              if (!ok) accept = false;
              break;
            }
        }
      }

      if (accept) {
        for (int leg : p.legs) {
          --remaining[leg];
          require(remaining[leg] >= 0, "sim: capacity went negative");
          if (use_share && inst.legs[leg].owner == kShared)
            for (int i = 0; i < bl.m(); ++i)
              if (bl.shared_legs[i] == leg) {
                if (share[p.party][i] >= 1)
                  --share[p.party][i];
                else
                  --pool[i];
                if (strat == Strategy::IC) --ic_share_left[p.party][i];
                break;
              }
        }
        rep.revenue += fare;
        ++rep.accepts;
      }
      rep.decisions.push_back(accept ? 1 : 0);
    }
  }
  rep.leftover = remaining;
  return rep;
}

struct StrategyStats {
  double mean_revenue = 0.0, std_revenue = 0.0;
  double rel_to_cp = 100.0;
  double mean_solve_ms = 0.0, std_solve_ms = 0.0;
  long long total_accepts = 0;
};

struct SimResult {
  std::vector<Strategy> strategies;
  std::vector<std::vector<RepResult>> reps;  // [strategy][replication]

  StrategyStats stats(std::size_t si) const {
    StrategyStats st;
    const auto& rs = reps[si];
    double n = static_cast<double>(rs.size());
    for (const auto& r : rs) {
      st.mean_revenue += r.revenue;
      st.total_accepts += r.accepts;
    }
    st.mean_revenue /= n;
    double var = 0.0;
    for (const auto& r : rs)
      var += (r.revenue - st.mean_revenue) * (r.revenue - st.mean_revenue);
    st.std_revenue = n > 1 ? std::sqrt(var / (n - 1)) : 0.0;
    double cnt = 0;
    for (const auto& r : rs)
      for (double ms : r.solve_ms) {
        st.mean_solve_ms += ms;
        cnt += 1;
      }
    if (cnt > 0) st.mean_solve_ms /= cnt;
    double v2 = 0.0;
    for (const auto& r : rs)
      for (double ms : r.solve_ms)
        v2 += (ms - st.mean_solve_ms) * (ms - st.mean_solve_ms);
    if (cnt > 1) st.std_solve_ms = std::sqrt(v2 / (cnt - 1));
    return st;
  }
};

/// Runs every requested strategy over shared arrival streams. Replications
/// use seeds derived from the master seed by index, so any thread count
/// produces identical output.
inline SimResult simulate(const AllianceInstance& inst, const SimConfig& cfg) {
  require(cfg.segments >= 1 && cfg.replications >= 1, "sim: bad config");
  SimResult out;
  out.strategies = cfg.strategies;
  out.reps.assign(cfg.strategies.size(), {});
  for (auto& v : out.reps) v.resize(cfg.replications);

  ArrivalStream st = arrival_stream(inst, cfg.rho);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      int r = next.fetch_add(1);
      if (r >= cfg.replications) return;
      std::uint64_t rep_seed = derive_seed(cfg.seed, "rep", r);
      auto events = generate_arrivals(inst, st, rep_seed);
      for (std::size_t si = 0; si < cfg.strategies.size(); ++si)
        out.reps[si][r] = run_replication(inst, events, cfg,
                                          cfg.strategies[si], rep_seed);
    }
  };
  int nthreads = std::max(1, cfg.threads);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

}  // namespace privbid
