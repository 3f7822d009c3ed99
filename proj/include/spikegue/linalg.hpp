#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "spikegue/errors.hpp"

namespace spikegue {

using HermitianMatrix = Eigen::MatrixXcd;

// Critical-regime spike configuration. Spike strengths are derived, never
// stored: alpha_i = sqrt(N) + N^(1/6) * a_{k-i+1} for i = 1..k, i.e. the
// offset vector is consumed in reverse so a_k pairs with the top spike.
struct SpikeConfig {
  int N = 0;
  std::vector<double> a;

  int k() const { return static_cast<int>(a.size()); }
  std::vector<double> alphas() const;
};

// GUE sample: diagonal real N(0,1), off-diagonal complex with independent
// N(0,1/2) parts, lower triangle the conjugate mirror. Deterministic in seed.
HermitianMatrix sample_gue(int n, std::uint64_t seed);

// M plus the diagonal spike matrix; requires cfg.N == dim(M) and k <= N.
HermitianMatrix apply_spikes(const HermitianMatrix& M, const SpikeConfig& cfg);

struct EigenSystem {
  Eigen::VectorXd values;    // strictly descending
  Eigen::MatrixXcd vectors;  // unit columns, column i pairs with values[i]
};

// Full Hermitian eigendecomposition (descending order). Throws
// degeneracy_error when an adjacent gap falls below 1e-12 * ||M||_F:
// the eigenvalue-ratio products downstream are meaningless past that point.
EigenSystem eigh(const HermitianMatrix& M);

// Eigenvalues only (descending); same degeneracy policy, much cheaper.
Eigen::VectorXd eigh_values(const HermitianMatrix& M);

// Submatrix with the first `drop` rows and columns removed, 0 <= drop < dim.
HermitianMatrix principal_minor(const HermitianMatrix& M, int drop);

// Minor with row/column l (1-based) deleted, realized as conjugation by the
// (1 <-> l) transposition followed by principal_minor(.., 1). This is how
// eigenvector components beyond the first reduce to the first-minor identity.
HermitianMatrix minor_without(const HermitianMatrix& M, int l);

}  // namespace spikegue
