#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace spikegue {

// One splitmix64 step: advances the state and returns the next word.
std::uint64_t splitmix64(std::uint64_t& state);

// Hash (master_seed, stream) into a decorrelated seed for that stream.
// Trial t of a Monte Carlo run draws from stream_seed(master_seed, t), so
// trials can run on any worker in any order without sharing RNG state.
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t stream);

// Gaussian source. mt19937_64 is pinned bit-for-bit by the C++ standard and
// the Box-Muller transform below is plain arithmetic, so a seed reproduces
// the same stream on every platform. (std::normal_distribution is
// implementation-defined and would not.)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in (0, 1]; never returns 0, so log(uniform01()) is finite.
  double uniform01();

  // Standard normal via Box-Muller, second value of each pair cached.
  double gaussian();

  // Complex entry with independent N(0, 1/2) real and imaginary parts,
  // i.e. E|z|^2 = 1: the off-diagonal GUE entry distribution.
  std::complex<double> gaussian_half_pair();

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace spikegue
