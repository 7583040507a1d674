#include <catch2/catch_amalgamated.hpp>

#include "privbid/generate.hpp"
#include "privbid/sim.hpp"
#include "toy_instances.hpp"

using namespace privbid;

TEST_CASE("zero load factor yields no arrivals") {
  auto inst = toy::two_party_network();
  auto st = arrival_stream(inst, 0.0);
  CHECK(generate_arrivals(inst, st, 1).empty());
}

TEST_CASE("arrival streams are deterministic under a fixed seed") {
  auto inst = toy::two_party_network();
  auto st = arrival_stream(inst);
  auto a = generate_arrivals(inst, st, 7);
  auto b = generate_arrivals(inst, st, 7);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].time == b[i].time);
    CHECK(a[i].path == b[i].path);
    CHECK(a[i].product == b[i].product);
  }
  CHECK(std::is_sorted(a.begin(), a.end(), [](const auto& x, const auto& y) {
    return x.time < y.time;
  }));
}

TEST_CASE("arrival counts match the Poisson moments") {
  // single path over a single leg: lambda = rho * c / T, expected count
  // lambda * T = rho * c
  AllianceInstance inst;
  inst.parties = {"P0"};
  inst.config.horizon = 1000.0;
  inst.config.rho = 1.2;
  inst.legs = {{"L", 100, 0}};
  inst.paths = {{"S", 0, {0}, {{100.0, 120.0}}}};  // mean demand rho*c
  inst.validate();
  auto st = arrival_stream(inst);
  REQUIRE(st.rate[0] == Catch::Approx(0.12));

  double sum = 0;
  const int reps = 100;
  for (int r = 0; r < reps; ++r)
    sum += static_cast<double>(generate_arrivals(inst, st, 1000 + r).size());
  double mean = sum / reps;
  // mean of `reps` Poisson(120) draws: 3 sigma = 3 * sqrt(120 / reps)
  CHECK(std::abs(mean - 120.0) <= 3.0 * std::sqrt(120.0 / reps));
}

TEST_CASE("ample capacity and zero bid-prices accept everything") {
  auto inst = toy::two_party_network();
  for (Leg& l : inst.legs) l.capacity = 10000;
  SimConfig cfg;
  cfg.replications = 1;
  cfg.segments = 2;
  cfg.seed = 5;
  cfg.strategies = {Strategy::CP};
  auto res = simulate(inst, cfg);
  const auto& rep = res.reps[0][0];
  for (char d : rep.decisions) CHECK(d == 1);
  CHECK(rep.accepts == static_cast<long long>(rep.decisions.size()));
}

TEST_CASE("zero capacity rejects everything") {
  auto inst = toy::two_party_network();
  for (Leg& l : inst.legs) l.capacity = 0;
  SimConfig cfg;
  cfg.replications = 1;
  cfg.segments = 1;
  cfg.strategies = {Strategy::CP, Strategy::IC};
  auto res = simulate(inst, cfg);
  for (const auto& reps : res.reps) {
    CHECK(reps[0].accepts == 0);
    CHECK(reps[0].revenue == 0.0);
  }
}

TEST_CASE("tight single-leg race matches a hand trace") {
  // one leg with two seats, two paths on it; first-segment duals are zero
  // (demand below capacity), so acceptance is first-come first-served until
  // the seats run out
  AllianceInstance inst;
  inst.parties = {"P0", "P1"};
  inst.config.horizon = 10.0;
  inst.config.rho = 1.0;
  inst.config.max_breakpoints = 2;
  inst.legs = {{"L", 2, kShared}};
  inst.paths = {
      {"SA", 0, {0}, {{100.0, 1.0}}},
      {"SB", 1, {0}, {{80.0, 1.0}}},
  };
  inst.validate();

  SimConfig cfg;
  cfg.replications = 1;
  cfg.segments = 1;
  cfg.seed = 3;
  cfg.strategies = {Strategy::CP};
  auto res = simulate(inst, cfg);
  const auto& rep = res.reps[0][0];

  // replay by hand: every event is acceptable while seats remain
  auto events = generate_arrivals(inst, arrival_stream(inst),
                                  derive_seed(cfg.seed, "rep", 0));
  REQUIRE(rep.decisions.size() == events.size());
  long long seats = 2;
  double want_revenue = 0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    bool expect = seats >= 1;
    CHECK(static_cast<bool>(rep.decisions[i]) == expect);
    if (expect) {
      --seats;
      want_revenue += inst.paths[events[i].path].products[0].fare;
    }
  }
  CHECK(rep.revenue == Catch::Approx(want_revenue));
  CHECK(rep.leftover[0] == seats);
}

TEST_CASE("revenue accounting is exact and capacities stay nonnegative") {
  GenOptions opt;
  opt.n_paths = 24;
  opt.n_parties = 2;
  opt.max_breakpoints = 3;
  auto inst = generate_instance(2200, opt);
  SimConfig cfg;
  cfg.replications = 3;
  cfg.segments = 3;
  cfg.seed = 11;
  cfg.ccs_keys.sparse_var_map = true;
  auto res = simulate(inst, cfg);
  auto st = arrival_stream(inst);
  for (std::size_t si = 0; si < res.strategies.size(); ++si)
    for (int r = 0; r < cfg.replications; ++r) {
      const auto& rep = res.reps[si][r];
      auto events =
          generate_arrivals(inst, st, derive_seed(cfg.seed, "rep", r));
      REQUIRE(rep.decisions.size() == events.size());
      double rev = 0;
      long long acc = 0;
      for (std::size_t i = 0; i < events.size(); ++i)
        if (rep.decisions[i]) {
          rev += inst.paths[events[i].path].products[events[i].product].fare;
          ++acc;
        }
      CHECK(rep.revenue == rev);  // exact, not approximate
      CHECK(rep.accepts == acc);
      for (long long left : rep.leftover) CHECK(left >= 0);
    }
}

TEST_CASE("single party: the pre-split strategy equals central planning") {
  GenOptions opt;
  opt.n_paths = 10;
  opt.n_parties = 1;
  opt.max_breakpoints = 3;
  auto inst = generate_instance(2300, opt);
  SimConfig cfg;
  cfg.replications = 2;
  cfg.segments = 3;
  cfg.seed = 21;
  cfg.strategies = {Strategy::CP, Strategy::IC};
  auto res = simulate(inst, cfg);
  for (int r = 0; r < cfg.replications; ++r) {
    CHECK(res.reps[0][r].revenue == res.reps[1][r].revenue);
    CHECK(res.reps[0][r].decisions == res.reps[1][r].decisions);
  }
}

TEST_CASE("equal expected demands split a shared leg evenly") {
  AllianceInstance inst;
  inst.parties = {"P0", "P1"};
  inst.config.horizon = 100.0;
  inst.config.rho = 1.0;
  inst.config.max_breakpoints = 2;
  inst.legs = {{"L", 10, kShared}};
  inst.paths = {
      {"SA", 0, {0}, {{100.0, 5.0}}},
      {"SB", 1, {0}, {{90.0, 5.0}}},
  };
  inst.validate();
  SimConfig cfg;
  cfg.replications = 1;
  cfg.segments = 1;
  cfg.strategies = {Strategy::IC};
  auto res = simulate(inst, cfg);
  // each party books at most its five-seat share
  long long p0 = 0, p1 = 0;
  auto events = generate_arrivals(inst, arrival_stream(inst),
                                  derive_seed(cfg.seed, "rep", 0));
  for (std::size_t i = 0; i < events.size(); ++i)
    if (res.reps[0][0].decisions[i])
      (inst.paths[events[i].path].party == 0 ? p0 : p1)++;
  CHECK(p0 <= 5);
  CHECK(p1 <= 5);
}

TEST_CASE("identity keys make the private strategy mirror central planning") {
  GenOptions opt;
  opt.n_paths = 30;
  opt.n_parties = 2;
  opt.max_breakpoints = 3;
  opt.cap_min = 8;
  opt.cap_max = 20;
  auto inst = generate_instance(2400, opt);
  SimConfig cfg;
  cfg.replications = 3;
  cfg.segments = 5;
  cfg.seed = 33;
  cfg.strategies = {Strategy::CP, Strategy::CCS};
  cfg.ccs_keys.identity = true;
  auto res = simulate(inst, cfg);
  for (int r = 0; r < cfg.replications; ++r) {
    INFO("replication " << r);
    CHECK(res.reps[0][r].decisions == res.reps[1][r].decisions);
    CHECK(res.reps[0][r].revenue == res.reps[1][r].revenue);
  }
}

TEST_CASE("threaded and serial simulation agree exactly") {
  GenOptions opt;
  opt.n_paths = 16;
  opt.n_parties = 2;
  opt.max_breakpoints = 2;
  auto inst = generate_instance(2500, opt);
  SimConfig cfg;
  cfg.replications = 4;
  cfg.segments = 2;
  cfg.seed = 44;
  cfg.strategies = {Strategy::CP};
  auto serial = simulate(inst, cfg);
  cfg.threads = 2;
  auto parallel = simulate(inst, cfg);
  for (int r = 0; r < cfg.replications; ++r) {
    CHECK(serial.reps[0][r].revenue == parallel.reps[0][r].revenue);
    CHECK(serial.reps[0][r].decisions == parallel.reps[0][r].decisions);
  }
}
