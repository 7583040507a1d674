#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "privbid/generate.hpp"
#include "privbid/models.hpp"
#include "privbid/rng.hpp"
#include "privbid/simplex.hpp"
#include "toy_instances.hpp"

using namespace privbid;

namespace {

LpSolution solve_ok(const LinearProgram& lp) {
  LpSolution sol = solve(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  SolutionCheck chk = check_solution(lp, sol);
  INFO("primal " << chk.primal_residual << " gap " << chk.duality_gap);
  REQUIRE(chk.ok());
  return sol;
}

}  // namespace

TEST_CASE("collective optimum matches integer enumeration on the toy net") {
  auto bl = assemble_blocks(toy::two_party_network());
  auto model = build_collective(bl);
  auto sol = solve_ok(model.lp);
  // capacities are loose enough that the optimal vertex is integral here;
  // the enumeration oracle is then exact
  double brute = oracle::enumerate_integer_max(model.lp);
  CHECK(sol.objective == Catch::Approx(brute).margin(1e-6));
  CHECK(sol.objective >= brute - 1e-7);

  Vec alpha = model.shared_duals(sol);
  REQUIRE(alpha.size() == 1);
  CHECK(alpha[0] >= -1e-9);
}

TEST_CASE("zero capacities force a zero optimum") {
  auto inst = toy::two_party_network();
  for (Leg& l : inst.legs) l.capacity = 0;
  auto model = build_collective(assemble_blocks(inst));
  auto sol = solve_ok(model.lp);
  CHECK(sol.objective == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("no shared legs means no shared rows") {
  auto model = build_collective(assemble_blocks(toy::one_party_line()));
  auto sol = solve_ok(model.lp);
  CHECK(model.shared_duals(sol).size() == 0);
  CHECK(sol.objective == Catch::Approx(200.0));  // two units at fare 100
}

TEST_CASE("hard-block splits never beat the collective model") {
  Rng rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    GenOptions opt;
    opt.n_paths = 14;
    opt.n_parties = 2 + trial % 3;
    opt.max_breakpoints = 3;
    opt.cap_min = 2;
    opt.cap_max = 8;
    auto bl = assemble_blocks(generate_instance(100 + trial, opt));
    auto joint = build_collective(bl);
    double z = solve_ok(joint.lp).objective;
    for (int split = 0; split < 3; ++split) {
      // random nonnegative partition of the shared capacity
      std::vector<Vec> share(bl.party.size(), Vec::Zero(bl.m()));
      for (int i = 0; i < bl.m(); ++i) {
        double tot = 0;
        std::vector<double> w(bl.party.size());
        for (auto& x : w) tot += (x = rng.uniform(0.01, 1.0));
        for (std::size_t k = 0; k < w.size(); ++k)
          share[k][i] = bl.shared_capacity[i] * w[k] / tot;
      }
      double sum_zk = 0;
      for (std::size_t k = 0; k < bl.party.size(); ++k)
        sum_zk +=
            solve_ok(build_individual(bl, static_cast<int>(k), share[k]).lp)
                .objective;
      CHECK(sum_zk <= z + 1e-6 * (1 + std::abs(z)));
    }
  }
}

TEST_CASE("single party with the full shared capacity equals the collective") {
  GenOptions opt;
  opt.n_paths = 10;
  opt.n_parties = 1;
  opt.max_breakpoints = 3;
  auto bl = assemble_blocks(generate_instance(7, opt));
  auto joint = build_collective(bl);
  auto indiv = build_individual(bl, 0, bl.shared_capacity);
  CHECK(solve_ok(joint.lp).objective ==
        Catch::Approx(solve_ok(indiv.lp).objective));
}

TEST_CASE("zero share restricts a party to its private legs") {
  auto bl = assemble_blocks(toy::two_party_network());
  auto m = build_individual(bl, 1, Vec::Zero(bl.m()));
  auto sol = solve_ok(m.lp);
  // S234 crosses the shared leg, so its columns must stay at zero
  const auto& pb = bl.party[1];
  for (int j = 0; j < pb.n(); ++j)
    if (Mat(pb.shared_use)(0, j) == 1.0) CHECK(sol.x[j] <= 1e-9);
}

TEST_CASE("shifted model displaces primal and capacity duals by the shifts") {
  Rng rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    GenOptions opt;
    opt.n_paths = 12;
    opt.n_parties = 2;
    opt.max_breakpoints = 3;
    opt.cap_min = 2;
    opt.cap_max = 6;
    auto bl = assemble_blocks(generate_instance(500 + trial, opt));
    auto base = build_collective(bl);
    auto base_sol = solve_ok(base.lp);

    std::vector<PartyShift> shift(bl.party.size());
    for (std::size_t k = 0; k < bl.party.size(); ++k) {
      shift[k].primal_shift = Vec::NullaryExpr(
          bl.party[k].n(), [&](Eigen::Index) { return rng.uniform(0, 1); });
      shift[k].dual_shift = Vec::NullaryExpr(
          bl.party[k].m(), [&](Eigen::Index) { return rng.uniform(0, 200); });
    }
    auto shifted = build_shifted(bl, shift);
    auto ssol = solve_ok(shifted.lp);

    // z* - eta is feasible and optimal for the original model
    double z_from_shift = 0;
    for (std::size_t k = 0; k < bl.party.size(); ++k) {
      Vec x = shifted.party_x(ssol, static_cast<int>(k)) -
              shift[k].primal_shift;
      CHECK(x.minCoeff() >= -1e-7);
      CHECK(x.maxCoeff() <= 1 + 1e-7);
      CHECK(((bl.party[k].private_use * x) - bl.party[k].private_capacity)
                .maxCoeff() <= 1e-7);
      z_from_shift += bl.party[k].revenue.dot(x);
    }
    CHECK(z_from_shift ==
          Catch::Approx(base_sol.objective).margin(1e-6 * (1 + base_sol.objective)));

    // beta_k - xi_k is a valid set of capacity duals: nonnegative and, with
    // the implied bound duals, attaining the same dual objective
    Vec beta = shifted.shared_duals(ssol);
    double dual_obj = bl.shared_capacity.dot(beta);
    CHECK((beta.size() == 0 || beta.minCoeff() >= -1e-8));
    for (std::size_t k = 0; k < bl.party.size(); ++k) {
      Vec ak = shifted.party_duals(ssol, static_cast<int>(k)) -
               shift[k].dual_shift;
      CHECK((ak.size() == 0 || ak.minCoeff() >= -1e-7));
      Vec lam = bl.party[k].revenue -
                bl.party[k].shared_use.transpose() * beta -
                bl.party[k].private_use.transpose() * ak;
      lam = lam.cwiseMax(0.0);
      dual_obj += bl.party[k].private_capacity.dot(ak) + lam.sum();
    }
    CHECK(dual_obj == Catch::Approx(base_sol.objective)
                          .margin(1e-6 * (1 + std::abs(base_sol.objective))));
  }
}
