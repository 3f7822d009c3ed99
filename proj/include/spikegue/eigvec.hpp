#pragma once

#include <vector>

#include "spikegue/linalg.hpp"
#include "spikegue/spectra.hpp"

namespace spikegue {

// |x_{j,l}|^2 straight from the eigendecomposition: the l-th coordinate of
// the j-th (descending-order) unit eigenvector. Both indices 1-based.
double direct_component_sq(const EigenSystem& sys, int j, int l);

// The eigenvalue-only route to the same quantity for l = 1:
//   |x_{j,1}|^2 = prod_i (sigma_j - lambda_i) / prod_{i != j} (sigma_j - sigma_i),
// with sigma the outer spectrum and lambda the spectrum of the first minor.
// Accumulated as signed log-magnitudes so N in the thousands cannot
// overflow, even though the signs provably cancel for interlaced input.
double component_sq_via_identity(const Eigen::VectorXd& outer, const Eigen::VectorXd& inner,
                                 int j);

// Identity route for arbitrary l: conjugate by the (1 <-> l) swap, take the
// first minor, and reuse the formula above. Needs one extra eigenvalue-only
// solve of dimension n-1.
double component_sq_identity_for(const HermitianMatrix& M, const Eigen::VectorXd& outer_values,
                                 int j, int l);

// N^(1/3) |x_{j,1}|^2 from the first two levels of a minor chain: the
// observable whose law converges at the critical edge.
double scaled_component_sq(const MinorChain& chain, int j);

// Truncated product estimator in scaled edge coordinates:
//   Xi_j(n) = n^(1/3) prod_{i<j} (xi_j - eta_i)/(xi_j - xi_i)
//                   * prod_{j<i<=n} (xi_j - eta_{i-1})/(xi_j - xi_i),
// where xi are outer and eta inner scaled coordinates. Requires j < n,
// n <= len(outer) and n - 1 <= len(inner). At n = N (full truncation, with
// the prefactor read as N^(1/3)) this is algebraically the identity above.
double xi_truncated(const std::vector<double>& outer, const std::vector<double>& inner, int j,
                    int n);

// log of the tail product prod_{i=L+1}^{N} (sigma_j - lambda_{i-1}) / (sigma_j - sigma_i),
// the portion of the identity governed by eigenvalues below index L.
// Requires 1 <= j <= L < N. Equals the Stieltjes integral of 1/(sigma_j - x)
// against the interlacing step measure restricted below lambda_L.
double log_tail_product(const Eigen::VectorXd& outer, const Eigen::VectorXd& inner, int j, int L);

}  // namespace spikegue
