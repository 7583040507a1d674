#pragma once

#include <string>
#include <vector>

#include "privbid/instance.hpp"
#include "privbid/rng.hpp"

namespace privbid {

/// Knobs for the synthetic hub-and-spoke generator. Paths are one or two
/// legs and every connection runs through a hub; parties get paths round
/// robin after a seeded shuffle, and any leg touched by two parties becomes
/// shared.
struct GenOptions {
  int n_paths = 100;
  int n_parties = 2;
  int hub_count = 2;
  double rho = 1.2;
  double horizon = 1000.0;
  int max_breakpoints = 20;
  int segments = 5;
  long long cap_min = 15, cap_max = 35;
  double hub_cap_factor = 2.5;  // trunk legs between hubs are bigger
  int min_products = 2, max_products = 4;
  double fare_lo = 80.0, fare_hi = 400.0;
  double dirichlet_alpha = 1.0;  // product-choice spread within a path
  double one_leg_fraction = 0.35;
  int spoke_divisor = 2;  // spokes = n_paths / divisor; higher = denser legs
};

inline AllianceInstance generate_instance(std::uint64_t seed,
                                          GenOptions opt = {}) {
  require(opt.n_paths >= opt.n_parties && opt.n_parties >= 1,
          "generator: need n_paths >= n_parties >= 1");
  require(opt.hub_count >= 1, "generator: need at least one hub");
  Rng rng(derive_seed(seed, "generate"));

  const int hubs = opt.hub_count;
  const int spokes = std::max(2, opt.n_paths / std::max(1, opt.spoke_divisor));
  // nodes: 0..hubs-1 are hubs, then spokes
  std::vector<int> spoke_hub(spokes);
  for (int w = 0; w < spokes; ++w)
    spoke_hub[w] = static_cast<int>(rng.uniform_int(0, hubs - 1));

  struct RawLeg {
    int from, to;
    long long cap;
  };
  std::vector<RawLeg> raw;
  auto cap_draw = [&](bool trunk) {
    long long c = rng.uniform_int(opt.cap_min, opt.cap_max);
    return trunk ? static_cast<long long>(c * opt.hub_cap_factor) : c;
  };
  for (int w = 0; w < spokes; ++w) {
    int s = hubs + w, h = spoke_hub[w];
    raw.push_back({s, h, cap_draw(false)});
    raw.push_back({h, s, cap_draw(false)});
  }
  for (int a = 0; a < hubs; ++a)
    for (int b = 0; b < hubs; ++b)
      if (a != b) raw.push_back({a, b, cap_draw(true)});

  // leg lookup by endpoint pair
  std::vector<std::vector<int>> out_of(hubs + spokes), into(hubs + spokes);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out_of[raw[i].from].push_back(static_cast<int>(i));
    into[raw[i].to].push_back(static_cast<int>(i));
  }

  // paths: one leg, or two legs meeting at a hub
  std::vector<std::vector<int>> path_legs;
  while (static_cast<int>(path_legs.size()) < opt.n_paths) {
    if (rng.uniform(0, 1) < opt.one_leg_fraction) {
      int l = static_cast<int>(rng.uniform_int(0, raw.size() - 1));
      path_legs.push_back({l});
    } else {
      int h = static_cast<int>(rng.uniform_int(0, hubs - 1));
      if (into[h].empty() || out_of[h].empty()) continue;
      int lin = into[h][rng.uniform_int(0, into[h].size() - 1)];
      int lout = out_of[h][rng.uniform_int(0, out_of[h].size() - 1)];
      if (raw[lin].from == raw[lout].to) continue;  // no round trips
      path_legs.push_back({lin, lout});
    }
  }

  // party assignment: seeded shuffle, then round robin
  std::vector<int> order(opt.n_paths);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order.begin(), order.end());
  std::vector<int> party_of(opt.n_paths);
  for (int i = 0; i < opt.n_paths; ++i)
    party_of[order[i]] = i % opt.n_parties;

  // ownership from usage; unused legs are dropped
  std::vector<std::set<int>> users(raw.size());
  std::vector<int> usage(raw.size(), 0);
  for (int s = 0; s < opt.n_paths; ++s)
    for (int l : path_legs[s]) {
      users[l].insert(party_of[s]);
      ++usage[l];
    }

  AllianceInstance inst;
  inst.config.horizon = opt.horizon;
  inst.config.rho = opt.rho;
  inst.config.max_breakpoints = opt.max_breakpoints;
  inst.config.segments = opt.segments;
  inst.config.seed = seed;
  for (int k = 0; k < opt.n_parties; ++k)
    inst.parties.push_back("P" + std::to_string(k));

  std::vector<int> leg_index(raw.size(), -1);
  char idbuf[32];
  for (std::size_t l = 0; l < raw.size(); ++l) {
    if (users[l].empty()) continue;
    Leg leg;
    std::snprintf(idbuf, sizeof idbuf, "L%03zu", l);
    leg.id = idbuf;
    leg.capacity = raw[l].cap;
    leg.owner = users[l].size() >= 2 ? kShared : *users[l].begin();
    leg_index[l] = static_cast<int>(inst.legs.size());
    inst.legs.push_back(leg);
  }

  // arrival rates: mu_j = rho * c_j / (T * N_j) per leg, averaged over the
  // legs of a path; product demands split the path demand by a Dirichlet draw
  const double T = opt.horizon;
  for (int s = 0; s < opt.n_paths; ++s) {
    Path p;
    std::snprintf(idbuf, sizeof idbuf, "S%03d", s);
    p.id = idbuf;
    p.party = party_of[s];
    double mu_sum = 0.0;
    for (int l : path_legs[s]) {
      p.legs.push_back(leg_index[l]);
      mu_sum += opt.rho * static_cast<double>(raw[l].cap) / (T * usage[l]);
    }
    double lambda = mu_sum / static_cast<double>(path_legs[s].size());

    int nprod =
        static_cast<int>(rng.uniform_int(opt.min_products, opt.max_products));
    double base = rng.uniform(opt.fare_lo, opt.fare_hi) *
                  (1.0 + 0.3 * (path_legs[s].size() - 1));
    std::vector<double> split(nprod);
    double tot = 0.0;
    for (double& g : split) tot += (g = rng.gamma(opt.dirichlet_alpha));
    static const double kClassFactor[] = {1.0, 0.72, 0.55, 0.42, 0.33, 0.27};
    for (int i = 0; i < nprod; ++i) {
      Product pr;
      pr.fare = base * kClassFactor[std::min<int>(i, 5)];
      pr.mean_demand = lambda * T * split[i] / tot;
      p.products.push_back(pr);
    }
    inst.paths.push_back(std::move(p));
  }

  inst.validate();
  return inst;
}

}  // namespace privbid
