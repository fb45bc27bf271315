#include "spi/rng.hpp"

#include <cmath>
#include <numbers>

namespace spi {

double NormalGenerator::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] keeps the log finite.
  const double u1 = 1.0 - rng_.uniform01();
  const double u2 = rng_.uniform01();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * std::numbers::pi * u2;
  spare_ = mag * std::sin(ang);
  has_spare_ = true;
  return mag * std::cos(ang);
}

std::uint64_t hash64(std::uint64_t h, std::uint64_t v) {
  SplitMix64 sm(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
  return sm.next();
}

std::uint64_t hash64(std::uint64_t h, std::string_view s) {
  // FNV-1a over the bytes, folded into the running hash.
  std::uint64_t f = 1469598103934665603ULL;
  for (unsigned char c : s) {
    f ^= c;
    f *= 1099511628211ULL;
  }
  return hash64(h, f);
}

}  // namespace spi
