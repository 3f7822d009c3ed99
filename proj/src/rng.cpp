#include "spikegue/rng.hpp"

#include <cmath>
#include <numbers>

namespace spikegue {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t stream) {
  // Two dependent splitmix64 outputs mixed again: adjacent streams of the
  // same master seed share no obvious structure.
  std::uint64_t s = master_seed;
  std::uint64_t a = splitmix64(s);
  s ^= stream * 0xD1B54A32D192ED03ULL + 0x9E3779B97F4A7C15ULL;
  std::uint64_t b = splitmix64(s);
  std::uint64_t c = a ^ b;
  return splitmix64(c);
}

double Rng::uniform01() {
  // Top 53 bits, shifted into (0, 1].
  return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform01();
  double u2 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(angle);
  has_spare_ = true;
  return r * std::cos(angle);
}

std::complex<double> Rng::gaussian_half_pair() {
  constexpr double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
  double re = gaussian() * inv_sqrt2;
  double im = gaussian() * inv_sqrt2;
  return {re, im};
}

}  // namespace spikegue
