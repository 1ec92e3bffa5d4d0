#pragma once

#include <cstdint>

namespace fitpa {

// xoshiro256** with splitmix64 seeding. Chosen over std::mt19937_64 because
// the standard distributions are implementation-defined, and the run manifest
// promises a named algorithm with bit-reproducible streams.
inline constexpr const char* kRngAlgorithm = "xoshiro256** (splitmix64-seeded)";

struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
  }

  // Seed of the independent stream for run `index` under `master`; feeding it
  // back through Rng(seed) reproduces the stream exactly.
  static std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
    return master ^ SplitMix64(0x5851f42d4c957f2dULL + index).next();
  }

  // Independent stream for run `index` of an ensemble under `master` seed.
  static Rng stream(std::uint64_t master, std::uint64_t index) {
    return Rng(stream_seed(master, index));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0,1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  // Uniform integer in [0, n), n > 0. Rejection-free bias is < 2^-53 for the
  // small n used here; acceptable and reproducible.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(next_double() * static_cast<double>(n)) % n;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
};

}  // namespace fitpa
