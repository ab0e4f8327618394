#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace skillrl {

namespace detail {

// SplitMix64 finalizer (Steele et al.). Full-avalanche mix of a 64-bit word.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

}  // namespace detail

// Counter-based deterministic random stream keyed by (seed, stream_id).
// The draw sequence depends only on the key and the number of draws taken,
// never on platform, scheduling, or other streams, so per-rollout substreams
// give reproducible batches regardless of collection order.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed),
        stream_id_(stream_id),
        base_(detail::mix64(seed + detail::kGolden) ^
              detail::mix64(detail::mix64(stream_id) + 0x6a09e667f3bcc909ull)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() {
    ++counter_;
    return detail::mix64(base_ + counter_ * detail::kGolden);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). Lemire multiply-shift; bias is < n / 2^64.
  int uniform_int(int n) {
    const auto x = static_cast<unsigned __int128>(next_u64());
    return static_cast<int>((x * static_cast<unsigned __int128>(n)) >> 64);
  }

  // Standard normal via Box-Muller; consumes exactly two uniforms per call.
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Independent child stream with a deterministic derived id.
  RngStream substream(std::uint64_t child) const {
    return RngStream(seed_, detail::mix64(stream_id_ ^ detail::mix64(child + 0xc2b2ae3d27d4eb4full)));
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

// Named stream ids so every randomness source in an experiment hangs off one
// root seed through a distinct, documented channel.
namespace streams {
inline constexpr std::uint64_t kPolicyInit = 1;
inline constexpr std::uint64_t kEnv = 2;
inline constexpr std::uint64_t kLatent = 3;
inline constexpr std::uint64_t kAction = 4;
inline constexpr std::uint64_t kManager = 5;
inline constexpr std::uint64_t kEval = 6;
}  // namespace streams

}  // namespace skillrl
