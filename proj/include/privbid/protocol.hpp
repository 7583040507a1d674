#pragma once

#include <chrono>
#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include "privbid/attack.hpp"
#include "privbid/simplex.hpp"
#include "privbid/wire.hpp"

namespace privbid {

/// Message transport between party actors. Delivery per sender is FIFO;
/// implementations must deliver a broadcast to every party including the
/// sender.
class Channel {
 public:
  virtual ~Channel() = default;
  virtual void broadcast(int from, const std::vector<std::uint8_t>& frame) = 0;
  /// Blocking receive for `to`; empty result means the channel gave up.
  virtual std::vector<std::uint8_t> recv(int to) = 0;
};

class InProcChannel : public Channel {
 public:
  explicit InProcChannel(int parties, int timeout_ms = 30000)
      : queues_(parties), timeout_ms_(timeout_ms) {}

  void broadcast(int from, const std::vector<std::uint8_t>& frame) override {
    std::lock_guard lock(mu_);
    for (auto& q : queues_) q.push_back({from, frame});
    cv_.notify_all();
  }

  std::vector<std::uint8_t> recv(int to) override {
    std::unique_lock lock(mu_);
    if (!cv_.wait_for(lock, std::chrono::milliseconds(timeout_ms_),
                      [&] { return !queues_[to].empty(); }))
      return {};
    auto [from, frame] = std::move(queues_[to].front());
    queues_[to].pop_front();
    (void)from;
    return frame;
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::vector<std::deque<std::pair<int, std::vector<std::uint8_t>>>> queues_;
  int timeout_ms_;
};

struct TranscriptEntry {
  int sender = 0;
  std::string type;
  std::string payload_hash;  // hex sha256
  std::size_t bytes = 0;
};

struct ProtocolTranscript {
  std::vector<TranscriptEntry> messages;  // ordered by (sender, sequence)
  std::vector<double> recovered_value;    // per party; agreement check data
  std::vector<std::string> output_hash;   // commitment to private outputs
};

struct ProtocolOptions {
  KeyPolicy policy;
  bool actors = true;          // threaded actors; false = sequential pipeline
  bool solve_per_party = true; // false: single solve shared by all parties
  int general_mode_retries = 5;
  SimplexOptions solver;
};

struct PartyOutcome {
  RecoveredOutputs out;
  std::vector<std::string> warnings;
  double mask_ms = 0.0, solve_ms = 0.0;
};

struct ProtocolResult {
  std::vector<PartyOutcome> party;
  ProtocolTranscript transcript;
  std::vector<std::vector<std::uint8_t>> payload_bytes;  // by party
  double wall_ms = 0.0;
  double masked_solve_ms = 0.0;      // one representative masked solve
  long long masked_lp_nonzeros = 0;  // size of the published model
  int general_retries = 0;
};

namespace detail {

inline std::string hash_outputs(const RecoveredOutputs& o) {
  std::vector<std::uint8_t> buf;
  auto put = [&](const Vec& v) {
    for (int i = 0; i < v.size(); ++i) {
      auto u = std::bit_cast<std::uint64_t>(v[i]);
      for (int b = 0; b < 8; ++b) buf.push_back((u >> (8 * b)) & 0xff);
    }
  };
  put(o.allocation);
  put(o.shared_bid_prices);
  put(o.private_bid_prices);
  Vec z(1);
  z[0] = o.total_value;
  put(z);
  return hex(sha256(buf));
}

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace detail

/// Runs the per-party masking protocol over `channel` (or an internal channel
/// when none is given): every party generates keys, masks, broadcasts its
/// payload, assembles the identical masked model from the received bytes,
/// solves it and recovers only its own outputs.
///
/// With a GENERAL M-matrix mode the masked feasible set can be a strict
/// subset of the shifted one, so each run is certified against the plain
/// collective solve and keys are resampled on failure.
inline ProtocolResult run_protocol(const Blocks& bl, std::uint64_t key_seed,
                                   const ProtocolOptions& opt = {},
                                   Channel* channel = nullptr) {
  const int parties = static_cast<int>(bl.party.size());
  require(parties >= 1, "protocol: no parties");
  auto wall0 = std::chrono::steady_clock::now();

  for (int attempt = 0;; ++attempt) {
    std::uint64_t seed = derive_seed(key_seed, "protocol-attempt", attempt);
    ProtocolResult res;
    res.party.resize(parties);
    res.payload_bytes.resize(parties);
    std::vector<MaskingKeys> keys(parties);

    // step 1-2: private keys, masking, publication
    for (int k = 0; k < parties; ++k) {
      auto t0 = std::chrono::steady_clock::now();
      Rng rng(derive_seed(seed, "keys", k));
      keys[k] = generate_keys(bl, k, rng, opt.policy);
      MaskedPartyData pd = mask(bl, k, keys[k]);
      res.payload_bytes[k] = wire::serialize(pd);
      res.party[k].warnings = keys[k].warnings;
      res.party[k].mask_ms = detail::ms_since(t0);
    }

    // step 3: exchange
    std::vector<std::vector<std::uint8_t>> received(parties);
    if (opt.actors) {
      InProcChannel fallback(parties);
      Channel& ch = channel ? *channel : fallback;
      std::vector<std::thread> threads;
      std::vector<std::string> errors(parties);
      std::vector<std::vector<std::vector<std::uint8_t>>> got(parties);
      for (int k = 0; k < parties; ++k)
        threads.emplace_back([&, k] {
          try {
            ch.broadcast(k, wire::frame(res.payload_bytes[k]));
            std::vector<bool> seen(parties, false);
            int have = 0;
            got[k].resize(parties);
            while (have < parties) {
              auto f = ch.recv(k);
              if (f.empty()) throw Error("protocol: channel timeout");
              auto payload = wire::unframe(f);
              MaskedPartyData pd = wire::deserialize(payload);
              require(pd.party >= 0 && pd.party < parties,
                      "protocol: payload from unknown party");
              if (seen[pd.party])
                throw Error("protocol: duplicate payload from party " +
                            std::to_string(pd.party));
              seen[pd.party] = true;
              got[k][pd.party] = std::move(payload);
              ++have;
            }
          } catch (const std::exception& e) {
            errors[k] = e.what();
          }
        });
      for (auto& t : threads) t.join();
      for (int k = 0; k < parties; ++k)
        if (!errors[k].empty()) throw Error(errors[k]);
      received = std::move(got[0]);
      // all actors hold identical bytes; keep one copy for assembly below
      for (int k = 1; k < parties; ++k)
        for (int j = 0; j < parties; ++j)
          require(got[k][j] == received[j], "protocol: byte divergence");
    } else {
      received = res.payload_bytes;
    }

    // transcript: one broadcast per party, ordered by sender
    for (int k = 0; k < parties; ++k)
      res.transcript.messages.push_back(
          {k, "masked-payload", hex(sha256(received[k])),
           received[k].size()});

    // step 4: everyone assembles the same model from the same bytes
    std::vector<MaskedPartyData> payloads;
    payloads.reserve(parties);
    for (int k = 0; k < parties; ++k)
      payloads.push_back(wire::deserialize(received[k]));
    MaskedModel mm = assemble_masked_model(std::move(payloads),
                                           bl.shared_capacity);
    res.masked_lp_nonzeros = mm.lp.rows.nonZeros();

    LpSolution shared_sol;
    bool solve_failed = false;
    const int solves = opt.solve_per_party ? parties : 1;
    for (int k = 0; k < solves && !solve_failed; ++k) {
      auto t0 = std::chrono::steady_clock::now();
      LpSolution sol = solve(mm.lp, opt.solver);
      double ms = detail::ms_since(t0);
      if (sol.status != LpStatus::Optimal) {
        // a general row multiplier can cut into the feasible set; that run
        // is discarded and the keys resampled
        require(opt.policy.m_mode == MMode::General,
                "protocol: masked model not optimal");
        solve_failed = true;
        break;
      }
      res.party[k].solve_ms = ms;
      if (k == 0) {
        shared_sol = std::move(sol);
        res.masked_solve_ms = ms;
      }
    }
    if (solve_failed) {
      if (attempt + 1 >= opt.general_mode_retries)
        throw Error("protocol: general-mode masking failed certification after " +
                    std::to_string(attempt + 1) + " attempts");
      continue;
    }

    // step 5: private recovery
    for (int k = 0; k < parties; ++k) {
      res.party[k].out = recover(mm, shared_sol, k, keys[k]);
      res.transcript.recovered_value.push_back(res.party[k].out.total_value);
      res.transcript.output_hash.push_back(
          detail::hash_outputs(res.party[k].out));
    }

    res.general_retries = attempt;
    res.wall_ms = detail::ms_since(wall0);
    if (opt.policy.m_mode == MMode::Diagonal || opt.policy.identity)
      return res;

    // GENERAL mode: certify against the plain model before accepting
    bool ok = true;
    Vec used = Vec::Zero(bl.m());
    double z_sum = 0.0;
    for (int k = 0; k < parties && ok; ++k) {
      const Vec& x = res.party[k].out.allocation;
      if (x.size() && (x.minCoeff() < -1e-6 || x.maxCoeff() > 1 + 1e-6))
        ok = false;
      Vec priv = bl.party[k].private_use * x - bl.party[k].private_capacity;
      if (priv.size() && priv.maxCoeff() > 1e-6) ok = false;
      used += bl.party[k].shared_use * x;
      z_sum += bl.party[k].revenue.dot(x);
    }
    if (ok && bl.m() && (used - bl.shared_capacity).maxCoeff() > 1e-6)
      ok = false;
    if (ok)
      ok = std::abs(z_sum - res.party[0].out.total_value) <=
           1e-6 * (1.0 + std::abs(z_sum));
    if (ok) {
      double z_direct = solve(build_collective(bl).lp, opt.solver).objective;
      ok = std::abs(z_direct - res.party[0].out.total_value) <=
           1e-6 * (1.0 + std::abs(z_direct));
    }
    if (ok) return res;
    if (attempt + 1 >= opt.general_mode_retries)
      throw Error("protocol: general-mode masking failed certification after " +
                  std::to_string(attempt + 1) + " attempts");
  }
}

inline ProtocolResult run_protocol(const AllianceInstance& inst,
                                   std::uint64_t key_seed,
                                   const ProtocolOptions& opt = {},
                                   Channel* channel = nullptr) {
  return run_protocol(assemble_blocks(inst), key_seed, opt, channel);
}

struct AuditFinding {
  int party = -1;
  std::string code;
  std::string detail;
};

/// Semi-honest review of a protocol run: schema compliance plus the known
/// weak spots — tiny parties, square transform maps, and masked incidence
/// that still looks like a scaled permutation.
inline std::vector<AuditFinding> verify_semi_honest(
    const std::vector<std::vector<std::uint8_t>>& payload_bytes) {
  std::vector<AuditFinding> findings;
  for (std::size_t k = 0; k < payload_bytes.size(); ++k) {
    MaskedPartyData pd;
    try {
      pd = wire::deserialize(payload_bytes[k]);
    } catch (const std::exception& e) {
      findings.push_back({static_cast<int>(k), "schema", e.what()});
      continue;
    }
    if (pd.n <= 2)
      findings.push_back({pd.party, "undersized",
                          "party size below privacy threshold (n=" +
                              std::to_string(pd.n) + ")"});
    if (pd.s == pd.n || pd.t == pd.m_priv)
      findings.push_back(
          {pd.party, "square-keys",
           "square transform maps allow exact reconstruction if the row "
           "multipliers leak"});
    if (pd.n > 0 && pd.m_shared > 0) {
      bool perm_like = true;
      for (int j = 0; j < pd.s && perm_like; ++j) {
        int nz = 0;
        for (int i = 0; i < pd.m_shared; ++i)
          nz += std::abs(pd.masked_shared_use(i, j)) > 1e-12;
        if (nz > 1) perm_like = false;
      }
      for (int i = 0; i < pd.m_shared && perm_like; ++i) {
        int nz = 0;
        for (int j = 0; j < pd.s; ++j)
          nz += std::abs(pd.masked_shared_use(i, j)) > 1e-12;
        if (nz > 1) perm_like = false;
      }
      if (perm_like)
        findings.push_back(
            {pd.party, "permutation-like",
             "masked shared incidence is a scaled permutation; the variable "
             "map may be exposed"});
    }
  }
  return findings;
}

}  // namespace privbid
