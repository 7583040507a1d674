#pragma once

#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace privbid {

using Digest = std::array<std::uint8_t, 32>;

inline Digest sha256(const void* data, std::size_t len) {
  Digest d{};
  unsigned int out = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  EVP_DigestUpdate(ctx, data, len);
  EVP_DigestFinal_ex(ctx, d.data(), &out);
  EVP_MD_CTX_free(ctx);
  return d;
}

inline Digest sha256(const std::vector<std::uint8_t>& v) {
  return sha256(v.data(), v.size());
}
inline Digest sha256(const std::string& s) { return sha256(s.data(), s.size()); }

inline std::string hex(const Digest& d) {
  static const char* k = "0123456789abcdef";
  std::string s;
  s.reserve(64);
  for (auto b : d) {
    s.push_back(k[b >> 4]);
    s.push_back(k[b & 0xf]);
  }
  return s;
}

inline std::string sha256_hex(const std::string& s) { return hex(sha256(s)); }

}  // namespace privbid
