#pragma once

#include <cstdint>
#include <string_view>

namespace spi {

// SplitMix64 (Steele, Lea, Vigna). Used for seeding and for hashing
// experiment coordinates into per-cell seeds.
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

// xoshiro256++ (Blackman, Vigna). State is seeded through SplitMix64 so any
// 64-bit seed is acceptable.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
};

// Standard normal variates by the Box-Muller transform over xoshiro256++.
// Each pair of uniforms yields two draws; the second is cached.
class NormalGenerator {
 public:
  explicit NormalGenerator(std::uint64_t seed) : rng_(seed) {}

  double next();

 private:
  Xoshiro256pp rng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t hash64(std::uint64_t h, std::uint64_t v);  // order-sensitive combine
std::uint64_t hash64(std::uint64_t h, std::string_view s);

}  // namespace spi
