#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string_view>

namespace privbid {

// splitmix64 finalizer; used to whiten seeds and label hashes.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stable labeled sub-seed. Every random stream in the project hangs off one
/// master seed through these, so reruns with the same seed are identical.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                                 std::uint64_t index = 0) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a over the label
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return mix64(master ^ mix64(h) ^ mix64(index + 0x51ed2701ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }
  /// Inclusive on both ends.
  long long uniform_int(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(eng_);
  }
  double exponential(double rate) {
    return std::exponential_distribution<double>(rate)(eng_);
  }
  double gamma(double shape) {
    return std::gamma_distribution<double>(shape, 1.0)(eng_);
  }
  std::uint64_t bits() { return eng_(); }

  template <class It>
  void shuffle(It first, It last) {
    std::shuffle(first, last, eng_);
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace privbid
