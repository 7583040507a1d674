#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "privbid/common.hpp"

namespace privbid {

/// Owner marker for capacities usable by every party.
inline constexpr int kShared = -1;

struct Product {
  double fare = 0.0;
  double mean_demand = 0.0;  // expected requests over the full horizon
};

struct Leg {
  std::string id;
  long long capacity = 0;  // integer units (seats, slots, ...)
  int owner = kShared;     // party index, or kShared
};

struct Path {
  std::string id;
  int party = 0;
  std::vector<int> legs;  // leg indices, ordered, duplicate-free
  std::vector<Product> products;
};

struct InstanceConfig {
  double horizon = 1000.0;
  double rho = 1.2;         // load factor used when the instance was built
  int max_breakpoints = 20; // cap on breakpoints per path
  int segments = 5;
  std::uint64_t seed = 0;
};

struct AllianceInstance {
  std::vector<std::string> parties;
  std::vector<Leg> legs;
  std::vector<Path> paths;
  InstanceConfig config;

  int num_parties() const { return static_cast<int>(parties.size()); }

  long long min_capacity_on(const Path& p) const {
    long long m = std::numeric_limits<long long>::max();
    for (int l : p.legs) m = std::min(m, legs[l].capacity);
    return m;
  }

  /// Structural validation; throws Error on the first violation.
  /// Single-party instances may keep shared legs (degenerate but legal).
  void validate() const {
    require(!parties.empty(), "instance: no parties");
    std::set<std::string> ids;
    for (const Leg& l : legs) {
      require(l.capacity >= 0, "instance: negative capacity on leg " + l.id);
      require(l.owner == kShared ||
                  (l.owner >= 0 && l.owner < num_parties()),
              "instance: bad owner on leg " + l.id);
      require(ids.insert(l.id).second, "instance: duplicate leg id " + l.id);
    }
    ids.clear();
    std::vector<std::set<int>> users(legs.size());
    for (const Path& p : paths) {
      require(ids.insert(p.id).second, "instance: duplicate path id " + p.id);
      require(p.party >= 0 && p.party < num_parties(),
              "instance: bad party on path " + p.id);
      require(!p.legs.empty(), "instance: path " + p.id + " has no legs");
      std::set<int> seen;
      for (int l : p.legs) {
        require(l >= 0 && l < static_cast<int>(legs.size()),
                "instance: path " + p.id + " references unknown leg");
        require(seen.insert(l).second,
                "instance: path " + p.id + " repeats a leg");
        if (legs[l].owner != kShared && legs[l].owner != p.party)
          throw Error("instance: cross-party private leg on path " + p.id);
        users[l].insert(p.party);
      }
      for (const Product& pr : p.products) {
        require(pr.fare > 0, "instance: nonpositive fare on path " + p.id);
        require(pr.mean_demand >= 0,
                "instance: negative demand on path " + p.id);
      }
    }
    if (num_parties() >= 2)
      for (std::size_t l = 0; l < legs.size(); ++l)
        if (legs[l].owner == kShared)
          require(users[l].size() >= 2,
                  "instance: shared leg " + legs[l].id +
                      " used by fewer than two parties");
  }
};

/// Marginal revenues of allocating 1..cap_bound units to a path, where the
/// per-path value function is the deterministic allocation model: units go to
/// products greedily by fare, each product capped at its mean demand rounded
/// to integer. The b-th entry is value(b) - value(b-1); the sequence is
/// nonincreasing, zero once demand is exhausted.
inline std::vector<double> expand_concave_to_breakpoints(const Path& path,
                                                         long long cap_bound) {
  require(!path.products.empty(), "path has no products");
  require(cap_bound >= 1, "breakpoint expansion needs cap_bound >= 1");
  std::vector<std::pair<double, long long>> classes;
  classes.reserve(path.products.size());
  for (const Product& p : path.products)
    classes.emplace_back(p.fare, std::llround(p.mean_demand));
  std::sort(classes.begin(), classes.end(),
            [](auto& a, auto& b) { return a.first > b.first; });
  std::vector<double> marginal;
  marginal.reserve(cap_bound);
  std::size_t c = 0;
  long long left = c < classes.size() ? classes[0].second : 0;
  for (long long b = 0; b < cap_bound; ++b) {
    while (c < classes.size() && left == 0) {
      ++c;
      left = c < classes.size() ? classes[c].second : 0;
    }
    if (c >= classes.size()) {
      marginal.push_back(0.0);
    } else {
      marginal.push_back(classes[c].first);
      --left;
    }
  }
  return marginal;
}

/// Per-path breakpoint counts and partial revenues for a whole instance.
struct Expansion {
  std::vector<long long> breakpoints;          // B_s per path
  std::vector<std::vector<double>> revenues;   // nonincreasing per path
};

inline Expansion expand_instance(const AllianceInstance& inst) {
  Expansion e;
  e.breakpoints.reserve(inst.paths.size());
  e.revenues.reserve(inst.paths.size());
  for (const Path& p : inst.paths) {
    long long cap = inst.min_capacity_on(p);
    long long bs = std::min<long long>(inst.config.max_breakpoints,
                                       std::max<long long>(1, cap));
    auto rev = expand_concave_to_breakpoints(p, bs);
    // zero-marginal breakpoints can never earn; keeping them only hands the
    // solver degenerate freedom that pollutes recovered allocations
    while (!rev.empty() && rev.back() == 0.0) rev.pop_back();
    e.breakpoints.push_back(static_cast<long long>(rev.size()));
    e.revenues.push_back(std::move(rev));
  }
  return e;
}

/// The partitioned data blocks of the capacity-sharing model. Incidence
/// columns repeat once per breakpoint of their path.
struct Blocks {
  struct PartyBlock {
    std::vector<int> private_legs;  // leg indices in row order
    Vec revenue;                    // length n_k
    SpMat shared_use;               // m x n_k, binary
    SpMat private_use;              // m_k x n_k, binary
    Vec private_capacity;           // length m_k
    std::vector<int> col_path;      // column -> path index
    std::vector<int> col_break;     // column -> breakpoint index (0-based)

    int n() const { return static_cast<int>(revenue.size()); }
    int m() const { return static_cast<int>(private_capacity.size()); }
  };

  std::vector<int> shared_legs;  // leg indices in row order
  Vec shared_capacity;           // length m
  std::vector<PartyBlock> party;

  int m() const { return static_cast<int>(shared_capacity.size()); }
};

inline Blocks assemble_blocks(const AllianceInstance& inst) {
  inst.validate();
  const Expansion exp = expand_instance(inst);
  Blocks bl;
  std::vector<int> shared_row(inst.legs.size(), -1);
  for (std::size_t l = 0; l < inst.legs.size(); ++l)
    if (inst.legs[l].owner == kShared) {
      shared_row[l] = static_cast<int>(bl.shared_legs.size());
      bl.shared_legs.push_back(static_cast<int>(l));
    }
  bl.shared_capacity = Vec(bl.shared_legs.size());
  for (std::size_t i = 0; i < bl.shared_legs.size(); ++i)
    bl.shared_capacity[i] = inst.legs[bl.shared_legs[i]].capacity;

  bl.party.resize(inst.num_parties());
  std::vector<int> private_row(inst.legs.size(), -1);
  for (int k = 0; k < inst.num_parties(); ++k) {
    auto& pb = bl.party[k];
    for (std::size_t l = 0; l < inst.legs.size(); ++l)
      if (inst.legs[l].owner == k) {
        private_row[l] = static_cast<int>(pb.private_legs.size());
        pb.private_legs.push_back(static_cast<int>(l));
      }
    pb.private_capacity = Vec(pb.private_legs.size());
    for (std::size_t i = 0; i < pb.private_legs.size(); ++i)
      pb.private_capacity[i] = inst.legs[pb.private_legs[i]].capacity;

    std::vector<double> rev;
    std::vector<Triplet> ta, tb;
    for (std::size_t s = 0; s < inst.paths.size(); ++s) {
      const Path& p = inst.paths[s];
      if (p.party != k) continue;
      for (long long b = 0; b < exp.breakpoints[s]; ++b) {
        int col = static_cast<int>(rev.size());
        rev.push_back(exp.revenues[s][b]);
        pb.col_path.push_back(static_cast<int>(s));
        pb.col_break.push_back(static_cast<int>(b));
        for (int l : p.legs) {
          if (shared_row[l] >= 0)
            ta.emplace_back(shared_row[l], col, 1.0);
          else
            tb.emplace_back(private_row[l], col, 1.0);
        }
      }
    }
    pb.revenue = Eigen::Map<const Vec>(rev.data(), rev.size());
    pb.shared_use.resize(bl.m(), pb.n());
    pb.shared_use.setFromTriplets(ta.begin(), ta.end());
    pb.private_use.resize(pb.m(), pb.n());
    pb.private_use.setFromTriplets(tb.begin(), tb.end());
    // clear private rows for the next party
    for (int l : pb.private_legs) private_row[l] = -1;
  }
  return bl;
}

}  // namespace privbid
