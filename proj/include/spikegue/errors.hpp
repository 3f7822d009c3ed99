#pragma once

#include <stdexcept>

namespace spikegue {

// Rejected input: bad dimensions, malformed spike vectors, contour setups
// that would put a pole on or across an integration contour, and the like.
struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Spectrum carries a gap below resolution; downstream eigenvalue products
// would divide by (numerical) zero.
struct degeneracy_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cauchy interlacing between a matrix and its minor failed beyond tolerance.
// Interlacing is a theorem, so this signals solver trouble, not bad data.
struct interlacing_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Contour quadrature did not stabilize under resolution doubling.
struct quadrature_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace spikegue
