#pragma once

#include <bit>
#include <cstring>
#include <string>
#include <vector>

#include "privbid/hash.hpp"
#include "privbid/mask.hpp"

namespace privbid::wire {

// Payload layout: one text header line
//   MPD1 party=<k> n=<n> m=<m> s=<s> t=<t> shared=<ms> blocks=13\n
// followed by 13 length-prefixed named blocks, each
//   [u32 name_len][name][u32 rows][u32 cols][rows*cols f64, row-major]
// with all integers and doubles little-endian.

inline constexpr const char* kMagic = "MPD1";

namespace detail {

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back((v >> (8 * i)) & 0xff);
}
inline void put_f64(std::vector<std::uint8_t>& out, double d) {
  auto v = std::bit_cast<std::uint64_t>(d);
  for (int i = 0; i < 8; ++i) out.push_back((v >> (8 * i)) & 0xff);
}

struct Reader {
  const std::uint8_t* p;
  std::size_t left;
  void need(std::size_t n) const {
    require(left >= n, "wire: truncated payload");
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(p[i]) << (8 * i);
    p += 4;
    left -= 4;
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(p[i]) << (8 * i);
    p += 8;
    left -= 8;
    return std::bit_cast<double>(v);
  }
  std::string bytes(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(p), n);
    p += n;
    left -= n;
    return s;
  }
};

inline void put_block(std::vector<std::uint8_t>& out, const char* name,
                      const Mat& m) {
  std::uint32_t len = static_cast<std::uint32_t>(std::strlen(name));
  put_u32(out, len);
  out.insert(out.end(), name, name + len);
  put_u32(out, static_cast<std::uint32_t>(m.rows()));
  put_u32(out, static_cast<std::uint32_t>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) put_f64(out, m(i, j));
}

inline Mat get_block(Reader& r, const char* name) {
  std::uint32_t len = r.u32();
  std::string got = r.bytes(len);
  require(got == name, "wire: expected block '" + std::string(name) +
                           "', found '" + got + "'");
  std::uint32_t rows = r.u32(), cols = r.u32();
  require(static_cast<std::uint64_t>(rows) * cols <= (1u << 28),
          "wire: block too large");
  Mat m(rows, cols);
  for (std::uint32_t i = 0; i < rows; ++i)
    for (std::uint32_t j = 0; j < cols; ++j) m(i, j) = r.f64();
  return m;
}

}  // namespace detail

inline std::vector<std::uint8_t> serialize(const MaskedPartyData& pd) {
  std::vector<std::uint8_t> out;
  std::string header = std::string(kMagic) + " party=" +
                       std::to_string(pd.party) + " n=" + std::to_string(pd.n) +
                       " m=" + std::to_string(pd.m_priv) +
                       " s=" + std::to_string(pd.s) +
                       " t=" + std::to_string(pd.t) +
                       " shared=" + std::to_string(pd.m_shared) + " blocks=13\n";
  out.insert(out.end(), header.begin(), header.end());
  using detail::put_block;
  put_block(out, "masked_revenue", pd.masked_revenue);
  put_block(out, "masked_dual_shift", pd.masked_dual_shift);
  put_block(out, "masked_shared_use", pd.masked_shared_use);
  put_block(out, "masked_private_use", pd.masked_private_use);
  put_block(out, "masked_slack_map", pd.masked_slack_map);
  put_block(out, "masked_private_cap", pd.masked_private_cap);
  put_block(out, "upper_lhs", pd.upper_lhs);
  put_block(out, "upper_rhs", pd.upper_rhs);
  put_block(out, "lower_lhs", pd.lower_lhs);
  put_block(out, "lower_rhs", pd.lower_rhs);
  put_block(out, "nonneg_lhs", pd.nonneg_lhs);
  put_block(out, "shared_shift", pd.shared_shift);
  Mat off(1, 1);
  off(0, 0) = pd.objective_offset;
  put_block(out, "objective_offset", off);
  return out;
}

inline MaskedPartyData deserialize(const std::uint8_t* data, std::size_t len) {
  detail::Reader r{data, len};
  // header line
  std::string header;
  while (true) {
    std::string c = r.bytes(1);
    if (c == "\n") break;
    header += c;
    require(header.size() < 256, "wire: unterminated header");
  }
  MaskedPartyData pd;
  int blocks = 0;
  {
    char magic[16] = {0};
    int n = std::sscanf(header.c_str(),
                        "%15s party=%d n=%d m=%d s=%d t=%d shared=%d blocks=%d",
                        magic, &pd.party, &pd.n, &pd.m_priv, &pd.s, &pd.t,
                        &pd.m_shared, &blocks);
    require(n == 8 && std::string(magic) == kMagic && blocks == 13,
            "wire: bad payload header");
    require(pd.n >= 0 && pd.m_priv >= 0 && pd.s >= 0 && pd.t >= 0 &&
                pd.m_shared >= 0 && pd.party >= 0,
            "wire: negative dimension");
  }
  using detail::get_block;
  auto vec = [](Mat m) { return Vec(Eigen::Map<Vec>(m.data(), m.size())); };
  pd.masked_revenue = vec(get_block(r, "masked_revenue"));
  pd.masked_dual_shift = vec(get_block(r, "masked_dual_shift"));
  pd.masked_shared_use = get_block(r, "masked_shared_use");
  pd.masked_private_use = get_block(r, "masked_private_use");
  pd.masked_slack_map = get_block(r, "masked_slack_map");
  pd.masked_private_cap = vec(get_block(r, "masked_private_cap"));
  pd.upper_lhs = get_block(r, "upper_lhs");
  pd.upper_rhs = vec(get_block(r, "upper_rhs"));
  pd.lower_lhs = get_block(r, "lower_lhs");
  pd.lower_rhs = vec(get_block(r, "lower_rhs"));
  pd.nonneg_lhs = get_block(r, "nonneg_lhs");
  pd.shared_shift = vec(get_block(r, "shared_shift"));
  Mat off = get_block(r, "objective_offset");
  require(off.rows() == 1 && off.cols() == 1, "wire: bad offset block");
  pd.objective_offset = off(0, 0);
  require(r.left == 0, "wire: trailing bytes after last block");

  require(pd.masked_revenue.size() == pd.s, "wire: revenue length");
  require(pd.masked_dual_shift.size() == pd.t, "wire: dual shift length");
  require(pd.masked_shared_use.rows() == pd.m_shared &&
              pd.masked_shared_use.cols() == pd.s,
          "wire: shared block shape");
  require(pd.masked_private_use.rows() == pd.m_priv &&
              pd.masked_private_use.cols() == pd.s,
          "wire: private block shape");
  require(pd.masked_slack_map.rows() == pd.m_priv &&
              pd.masked_slack_map.cols() == pd.t,
          "wire: slack map shape");
  require(pd.masked_private_cap.size() == pd.m_priv, "wire: capacity length");
  require(pd.upper_lhs.rows() == pd.n && pd.upper_lhs.cols() == pd.s &&
              pd.lower_lhs.rows() == pd.n && pd.lower_lhs.cols() == pd.s,
          "wire: bound block shape");
  require(pd.upper_rhs.size() == pd.n && pd.lower_rhs.size() == pd.n,
          "wire: bound rhs length");
  require(pd.nonneg_lhs.rows() == pd.m_priv && pd.nonneg_lhs.cols() == pd.t,
          "wire: nonneg block shape");
  require(pd.shared_shift.size() == pd.m_shared, "wire: shift length");
  return pd;
}

inline MaskedPartyData deserialize(const std::vector<std::uint8_t>& bytes) {
  return deserialize(bytes.data(), bytes.size());
}

/// Frame = 32-byte content hash followed by the payload bytes.
inline std::vector<std::uint8_t> frame(const std::vector<std::uint8_t>& payload) {
  Digest d = sha256(payload);
  std::vector<std::uint8_t> out(d.begin(), d.end());
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

/// Splits and verifies a frame; throws on hash mismatch.
inline std::vector<std::uint8_t> unframe(const std::vector<std::uint8_t>& f) {
  require(f.size() >= 32, "wire: short frame");
  std::vector<std::uint8_t> payload(f.begin() + 32, f.end());
  Digest d = sha256(payload);
  require(std::equal(d.begin(), d.end(), f.begin()),
          "wire: content hash mismatch");
  return payload;
}

}  // namespace privbid::wire
