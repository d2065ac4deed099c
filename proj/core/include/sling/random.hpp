#pragma once

#include <cstdint>
#include <limits>

namespace sling {

// SplitMix64 finaliser. Bijective on 64-bit words; used both to seed the
// generator below and as a cheap hash mixer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) noexcept {
  return splitmix64(h ^ splitmix64(v));
}

// Identifies one independent random stream: all draws made from
// RandomStream{key} depend only on (seed, stream).
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  bool operator==(const RngSeed&) const = default;
};

// xoshiro256** seeded from (seed, stream) through SplitMix64.
//
// Parallel code gives every work item (a node, a query) its own stream id, so
// the sampled values never depend on the number of workers or on scheduling.
// Satisfies UniformRandomBitGenerator.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(RngSeed key) noexcept {
    std::uint64_t x = hash_combine(key.seed, key.stream ^ 0x5bd1e9955bd1e995ULL);
    for (auto& word : state_) {
      x = splitmix64(x);
      word = x;
    }
  }
  RandomStream(std::uint64_t seed, std::uint64_t stream) noexcept : RandomStream(RngSeed{seed, stream}) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound), bound > 0. Lemire's multiply-shift with
  // rejection, so the result is exactly uniform and platform independent.
  std::uint64_t below(std::uint64_t bound) noexcept {
    Wide product = static_cast<Wide>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<Wide>((*this)()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  // True with probability p.
  bool bernoulli(double p) noexcept { return uniform() < p; }

 private:
  __extension__ using Wide = unsigned __int128;

  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

  std::uint64_t state_[4];
};

}  // namespace sling
