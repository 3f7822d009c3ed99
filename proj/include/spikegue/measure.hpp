#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace spikegue {

// The interlacing step measure of an (outer, inner) spectrum pair: density 1
// on (sigma_i, lambda_{i-1}] for i = 2..N and 0 elsewhere. Intervals are
// stored in that order (descending), pairwise disjoint by interlacing.
struct StepMeasure {
  std::vector<double> lower;
  std::vector<double> upper;

  double total_mass() const;
};

// Requires outer of length N descending, inner of length N-1, strictly
// interlaced; throws interlacing_error otherwise.
StepMeasure build_step_measure(const Eigen::VectorXd& outer, const Eigen::VectorXd& inner);

// M_N(x): mass of (x, infinity). Continuous, non-increasing, 1-Lipschitz,
// piecewise linear; equals total_mass() left of the spectrum and 0 right.
double measure_tail(const StepMeasure& m, double x);

// integral of f against the measure restricted to intervals whose upper end
// lies at or below cutoff. Adaptive quadrature piece by piece; f must be
// smooth on each closed interval.
double integrate_against(const StepMeasure& m, const std::function<double(double)>& f,
                         double cutoff);

// Closed first and second moments of M_N(x) for the critically spiked
// ensemble (single spike alpha = sqrt(N), minor removing the spiked row):
//   E_N(x) = (1/2pi) (-sqrt(4N - x^2) + x arccos(x / 2 sqrt(N))) + sqrt(N) - x/2
//   V_N(x) = (1/pi)  (sqrt(1 - x^2/4N) + arccos(x / 2 sqrt(N)))
// evaluated with the 4N - x^2 factorization that stays accurate at the edge.
// Arguments are clamped to [-2 sqrt(N), 2 sqrt(N)]; both continue constantly
// beyond the spectrum ends.
double e_n_closed(int N, double x);
double v_n_closed(int N, double x);

// Airy-limit predictions at edge coordinate xi <= -1 for the rescaled tail:
// mean -xi/2 and variance (2/pi) sqrt(-xi). The critical spike shifts the
// variance by a_k at this order; airy_variance_with_spike exposes that
// variant so both predictions can be compared against data.
std::pair<double, double> airy_asymptotics(double xi);
double airy_variance_with_spike(double xi, double a_k);

// One Monte Carlo summary line of mc_measure_moments.
struct MeasureMomentRow {
  double x = 0.0;
  std::string regime;  // "bulk" or "edge"
  int trials = 0;
  double mean_mc = 0.0;
  double se_mean = 0.0;
  double var_mc = 0.0;
  double mean_closed = 0.0;
  double var_closed = 0.0;
  double z_mean = 0.0;
};

// Regime tag used in measure outputs: "edge" when the edge coordinate
// N^(1/6)(x - 2 sqrt(N)) is within a dozen units of the spectral edge.
std::string regime_tag(int N, double x);

}  // namespace spikegue
