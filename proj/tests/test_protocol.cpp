#include <catch2/catch_amalgamated.hpp>

#include "privbid/generate.hpp"
#include "privbid/protocol.hpp"
#include "toy_instances.hpp"

using namespace privbid;

namespace {

GenOptions small_opt(int paths = 10, int parties = 2) {
  GenOptions o;
  o.n_paths = paths;
  o.n_parties = parties;
  o.max_breakpoints = 3;
  o.cap_min = 2;
  o.cap_max = 6;
  return o;
}

std::vector<std::uint8_t> raw_doubles(const Vec& v) {
  std::vector<std::uint8_t> out;
  for (int i = 0; i < v.size(); ++i) {
    auto u = std::bit_cast<std::uint64_t>(v[i]);
    for (int b = 0; b < 8; ++b) out.push_back((u >> (8 * b)) & 0xff);
  }
  return out;
}

bool contains(const std::vector<std::uint8_t>& hay,
              const std::vector<std::uint8_t>& needle) {
  if (needle.empty()) return true;
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) !=
         hay.end();
}

}  // namespace

TEST_CASE("payload serialization round-trips exactly") {
  auto bl = assemble_blocks(toy::two_party_network());
  Rng rng(2);
  auto keys = generate_keys(bl, 1, rng, {});
  auto pd = mask(bl, 1, keys);
  auto bytes = wire::serialize(pd);
  auto back = wire::deserialize(bytes);
  CHECK(wire::serialize(back) == bytes);
  CHECK(back.party == 1);
  CHECK(back.masked_revenue.isApprox(pd.masked_revenue, 0));
  CHECK(back.upper_lhs.isApprox(pd.upper_lhs, 0));
  CHECK(back.objective_offset == pd.objective_offset);

  // tampering is caught by the frame hash
  auto f = wire::frame(bytes);
  f[40] ^= 0x5a;
  CHECK_THROWS_WITH(wire::unframe(f),
                    Catch::Matchers::ContainsSubstring("hash mismatch"));
  // truncation is caught by the reader
  auto cut = bytes;
  cut.resize(cut.size() / 2);
  CHECK_THROWS(wire::deserialize(cut));
}

TEST_CASE("actor protocol: deterministic, agreeing, isolated") {
  auto inst = generate_instance(600, small_opt(12, 3));
  auto bl = assemble_blocks(inst);
  auto direct = solve(build_collective(bl).lp);
  REQUIRE(direct.status == LpStatus::Optimal);

  ProtocolOptions opt;  // threaded actors, every party solves
  auto r1 = run_protocol(bl, 42, opt);
  auto r2 = run_protocol(bl, 42, opt);

  // determinism: identical transcripts and outputs across runs
  REQUIRE(r1.transcript.messages.size() == r2.transcript.messages.size());
  for (std::size_t i = 0; i < r1.transcript.messages.size(); ++i) {
    CHECK(r1.transcript.messages[i].payload_hash ==
          r2.transcript.messages[i].payload_hash);
    CHECK(r1.transcript.messages[i].bytes == r2.transcript.messages[i].bytes);
  }
  CHECK(r1.transcript.output_hash == r2.transcript.output_hash);

  // agreement: identical recovered value and shared bid-prices everywhere
  for (std::size_t k = 1; k < r1.party.size(); ++k) {
    CHECK(r1.party[k].out.total_value == r1.party[0].out.total_value);
    CHECK(r1.party[k].out.shared_bid_prices ==
          r1.party[0].out.shared_bid_prices);
  }
  CHECK(r1.party[0].out.total_value ==
        Catch::Approx(direct.objective)
            .margin(1e-6 * (1 + std::abs(direct.objective))));

  // isolation: no plaintext revenue or key bytes in any payload
  for (int k = 0; k < 3; ++k) {
    auto plaintext = raw_doubles(bl.party[k].revenue);
    auto caps = raw_doubles(bl.party[k].private_capacity);
    Rng rng(derive_seed(derive_seed(42, "protocol-attempt", 0), "keys", k));
    auto keys = generate_keys(bl, k, rng, opt.policy);
    auto keybytes = raw_doubles(
        Eigen::Map<const Vec>(keys.var_map.data(), keys.var_map.size()));
    for (const auto& payload : r1.payload_bytes) {
      CHECK_FALSE(contains(payload, plaintext));
      if (caps.size() > 8) CHECK_FALSE(contains(payload, caps));
      CHECK_FALSE(contains(payload, keybytes));
    }
  }

  // a fresh assembly from the transcript's payload bytes replays to the
  // same masked optimum
  std::vector<MaskedPartyData> payloads;
  for (const auto& bytes : r1.payload_bytes)
    payloads.push_back(wire::deserialize(bytes));
  auto mm = assemble_masked_model(std::move(payloads), bl.shared_capacity);
  auto replay = solve(mm.lp);
  REQUIRE(replay.status == LpStatus::Optimal);
  CHECK(replay.objective - mm.total_offset ==
        Catch::Approx(r1.party[0].out.total_value).margin(1e-9));
}

TEST_CASE("sequential pipeline matches the actor protocol bit for bit") {
  auto bl = assemble_blocks(generate_instance(601, small_opt(10, 2)));
  ProtocolOptions actors;
  ProtocolOptions seq;
  seq.actors = false;
  seq.solve_per_party = false;
  auto ra = run_protocol(bl, 7, actors);
  auto rs = run_protocol(bl, 7, seq);
  REQUIRE(ra.party.size() == rs.party.size());
  for (std::size_t k = 0; k < ra.party.size(); ++k) {
    CHECK(ra.party[k].out.total_value == rs.party[k].out.total_value);
    CHECK(ra.party[k].out.allocation == rs.party[k].out.allocation);
    CHECK(ra.party[k].out.shared_bid_prices ==
          rs.party[k].out.shared_bid_prices);
  }
  CHECK(ra.payload_bytes == rs.payload_bytes);
}

namespace {

/// Deliberately broken channel: delivers the first sender's frame twice.
class DuplicatingChannel : public InProcChannel {
 public:
  explicit DuplicatingChannel(int parties) : InProcChannel(parties, 2000) {}
  void broadcast(int from, const std::vector<std::uint8_t>& frame) override {
    InProcChannel::broadcast(from, frame);
    if (from == 0) InProcChannel::broadcast(from, frame);
  }
};

/// Drops everything a given sender broadcasts.
class LossyChannel : public InProcChannel {
 public:
  LossyChannel(int parties, int drop) : InProcChannel(parties, 300), drop_(drop) {}
  void broadcast(int from, const std::vector<std::uint8_t>& frame) override {
    if (from == drop_) return;
    InProcChannel::broadcast(from, frame);
  }

 private:
  int drop_;
};

}  // namespace

TEST_CASE("channel faults abort the protocol with a diagnostic") {
  auto bl = assemble_blocks(generate_instance(602, small_opt(8, 2)));
  {
    DuplicatingChannel ch(2);
    CHECK_THROWS_WITH(run_protocol(bl, 3, {}, &ch),
                      Catch::Matchers::ContainsSubstring("duplicate"));
  }
  {
    LossyChannel ch(2, 1);
    CHECK_THROWS_WITH(run_protocol(bl, 3, {}, &ch),
                      Catch::Matchers::ContainsSubstring("timeout"));
  }
}

TEST_CASE("semi-honest audit findings") {
  auto bl = assemble_blocks(generate_instance(603, small_opt(12, 2)));

  // defaults: rectangular maps, permutation, reasonable sizes -> clean
  auto res = run_protocol(bl, 11, {});
  CHECK(verify_semi_honest(res.payload_bytes).empty());

  // square maps are flagged
  ProtocolOptions sq;
  sq.policy.extra_cols_var = 0;
  sq.policy.extra_cols_slack = 0;
  auto res2 = run_protocol(bl, 11, sq);
  auto findings = verify_semi_honest(res2.payload_bytes);
  REQUIRE_FALSE(findings.empty());
  CHECK(findings[0].code == "square-keys");

  // a party with n <= 2 is flagged as undersized
  AllianceInstance tiny;
  tiny.parties = {"P0", "P1"};
  tiny.config.max_breakpoints = 1;
  tiny.legs = {{"LA", 2, kShared}, {"LB", 2, 1}, {"LC", 2, 1}};
  tiny.paths = {
      {"SA", 0, {0}, {{100.0, 1.0}}},
      {"SB", 1, {0, 1}, {{90.0, 1.0}}},
      {"SC", 1, {2}, {{70.0, 1.0}}},
      {"SD", 1, {1}, {{50.0, 1.0}}},
  };
  tiny.validate();
  auto res3 = run_protocol(assemble_blocks(tiny), 12, {});
  bool undersized = false;
  for (const auto& f : verify_semi_honest(res3.payload_bytes))
    undersized |= f.code == "undersized" && f.party == 0;
  CHECK(undersized);

  // identity incidence without permutation leaves a scaled permutation
  ProtocolOptions noperm;
  noperm.policy.permute = false;
  noperm.policy.sparse_var_map = true;
  auto res4 = run_protocol(assemble_blocks(tiny), 13, noperm);
  bool perm_like = false;
  for (const auto& f : verify_semi_honest(res4.payload_bytes))
    perm_like |= f.code == "permutation-like";
  CHECK(perm_like);

  // broken payload bytes are a schema finding
  auto bad = res.payload_bytes;
  bad[0].resize(bad[0].size() / 3);
  auto f5 = verify_semi_honest(bad);
  REQUIRE_FALSE(f5.empty());
  CHECK(f5[0].code == "schema");
}
