#pragma once

#include <string>
#include <vector>

#include "spikegue/linalg.hpp"

namespace spikegue {

enum class InterlacingStatus { strict, degenerate };

// Spectra of the nested minors M, M^(1), ..., M^(depth-1), where M^(d)
// drops the first d rows/columns. levels[d] is descending, length N - d.
struct MinorChain {
  int N = 0;
  std::vector<Eigen::VectorXd> levels;
  InterlacingStatus interlacing = InterlacingStatus::strict;

  int depth() const { return static_cast<int>(levels.size()); }
};

// Builds the chain and verifies Cauchy interlacing between adjacent levels.
// Gaps within 1e-12 of zero (relative to the spectral scale) mark the chain
// degenerate; sign violations beyond that throw interlacing_error, since
// interlacing is a theorem and a violation means the solver misbehaved.
MinorChain build_minor_chain(const HermitianMatrix& M, int depth);

// Top m edge coordinates xi_i = N^(1/6) (lambda_i - 2 sqrt(N)), i = 1..m.
// N is the ambient dimension, also for minor spectra of length < N.
std::vector<double> scaled_edge_coords(const Eigen::VectorXd& values, int N, int m);

// Classical location of the i-th largest eigenvalue: Upsilon_i solves
// integral_{Upsilon_i/sqrt(N)}^{2} rho_sc(x) dx = (N - i + 1/2) / N,
// by bisection on the closed semicircle tail, residual below 1e-12.
double semicircle_quantile(int N, int i);

// Fraction of the spectrum inside the optimal rigidity envelope
// |sigma_i - Upsilon_i| <= N^(-1/6+epsilon) * i^(-1/3), checked for
// i <= (1 - cut) * N; worst_index maximizes deviation / bound.
struct RigidityReport {
  int N = 0;
  double epsilon = 0.1;
  double cut = 0.1;
  double satisfied_fraction = 0.0;
  int worst_index = 0;        // 1-based
  double worst_deviation = 0.0;
};

RigidityReport rigidity_report(const Eigen::VectorXd& values, double epsilon = 0.1,
                               double cut = 0.1);

// Same survey over the parent level of a chain.
RigidityReport rigidity_report(const MinorChain& chain, double epsilon = 0.1, double cut = 0.1);

std::string to_json(const RigidityReport& report);

}  // namespace spikegue
