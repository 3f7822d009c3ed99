#pragma once

#include <vector>

namespace spikegue {

// Lower and upper quartile gap, by linear interpolation of the order
// statistics at rank (n - 1) * p.
double interquartile_range(std::vector<double> sample);

// Silverman's rule of thumb with a 1e-3 floor so degenerate samples still
// yield a usable kernel width.
double silverman_bandwidth(const std::vector<double>& sample);

// Gaussian kernel density estimate at a single point.
double kde_eval(const std::vector<double>& sample, double bandwidth, double x);

// Density curve on a regular grid covering the sample plus three bandwidths
// of margin, spaced at roughly half a bandwidth.
struct KdeCurve {
  double bandwidth = 0.0;
  std::vector<double> x;
  std::vector<double> density;
};

KdeCurve kde_curve(const std::vector<double>& sample);

// -log of the empirical tail probability on a fixed grid of thresholds.
// Thresholds whose exceedance count is zero are censored (dropped), so the
// three vectors stay aligned but may be shorter than the requested grid.
struct TailCurve {
  std::vector<double> t;
  std::vector<double> neg_log_tail;
  std::vector<long> count_above;
};

TailCurve tail_curve(const std::vector<double>& sample, double t_min, double t_max, double step);

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

// One-sample Kolmogorov-Smirnov distance to the unit-rate exponential law.
double ks_exp1(std::vector<double> sample);

double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Goodness-of-fit summary against Exp(1): KS distance, sample mean, and the
// least-squares slope of the -log tail over t in [0.5, 3] (step 0.05). An
// exponential sample of unit rate has mean 1 and tail slope 1.
struct Exp1Gof {
  double ks = 0.0;
  double mean = 0.0;
  double tail_slope = 0.0;
};

Exp1Gof exp1_gof(const std::vector<double>& sample);

}  // namespace spikegue
