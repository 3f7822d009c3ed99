#include "spikegue/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spikegue/errors.hpp"

namespace spikegue {

namespace {

double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

double interquartile_range(std::vector<double> sample) {
  if (sample.size() < 2) throw config_error("interquartile_range: need at least two points");
  std::sort(sample.begin(), sample.end());
  return quantile_sorted(sample, 0.75) - quantile_sorted(sample, 0.25);
}

double silverman_bandwidth(const std::vector<double>& sample) {
  const std::size_t n = sample.size();
  if (n < 2) throw config_error("silverman_bandwidth: need at least two points");
  double mean = 0.0;
  for (double v : sample) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : sample) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const double spread = std::min(sd, interquartile_range(sample) / 1.34);
  const double h = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
  return std::max(h, 1e-3);
}

double kde_eval(const std::vector<double>& sample, double bandwidth, double x) {
  if (sample.empty()) throw config_error("kde_eval: empty sample");
  if (!(bandwidth > 0.0)) throw config_error("kde_eval: bandwidth must be positive");
  const double norm = 1.0 / (static_cast<double>(sample.size()) * bandwidth *
                             std::sqrt(2.0 * std::numbers::pi));
  double sum = 0.0;
  for (double v : sample) {
    const double u = (x - v) / bandwidth;
    sum += std::exp(-0.5 * u * u);
  }
  return norm * sum;
}

KdeCurve kde_curve(const std::vector<double>& sample) {
  KdeCurve curve;
  curve.bandwidth = silverman_bandwidth(sample);
  const auto [lo_it, hi_it] = std::minmax_element(sample.begin(), sample.end());
  const double lo = *lo_it - 3.0 * curve.bandwidth;
  const double hi = *hi_it + 3.0 * curve.bandwidth;
  const int steps = std::max(2, static_cast<int>(std::ceil((hi - lo) / (0.5 * curve.bandwidth))));
  curve.x.resize(steps + 1);
  curve.density.resize(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    curve.x[i] = lo + (hi - lo) * static_cast<double>(i) / steps;
    curve.density[i] = kde_eval(sample, curve.bandwidth, curve.x[i]);
  }
  return curve;
}

TailCurve tail_curve(const std::vector<double>& sample, double t_min, double t_max, double step) {
  if (sample.empty()) throw config_error("tail_curve: empty sample");
  if (!(step > 0.0) || !(t_min <= t_max)) throw config_error("tail_curve: bad threshold grid");
  std::vector<double> sorted(sample);
  std::sort(sorted.begin(), sorted.end());
  TailCurve curve;
  const double n = static_cast<double>(sorted.size());
  for (int i = 0;; ++i) {
    const double t = t_min + i * step;
    if (t > t_max + 0.5 * step) break;
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t);
    if (above == 0) continue;
    curve.t.push_back(t);
    curve.neg_log_tail.push_back(-std::log(static_cast<double>(above) / n));
    curve.count_above.push_back(static_cast<long>(above));
  }
  return curve;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw config_error("least_squares_slope: need two aligned samples of equal length");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw config_error("least_squares_slope: degenerate abscissae");
  return sxy / sxx;
}

double ks_exp1(std::vector<double> sample) {
  if (sample.empty()) throw config_error("ks_exp1: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = 1.0 - std::exp(-sample[i]);
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    d = std::max(d, std::abs(static_cast<double>(i) / n - f));
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw config_error("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    // Drain ties from both sides before comparing: at a shared value the
    // two empirical distributions jump together.
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

Exp1Gof exp1_gof(const std::vector<double>& sample) {
  Exp1Gof gof;
  gof.ks = ks_exp1(sample);
  double sum = 0.0;
  for (double v : sample) sum += v;
  gof.mean = sum / static_cast<double>(sample.size());
  TailCurve tail = tail_curve(sample, 0.5, 3.0, 0.05);
  gof.tail_slope = least_squares_slope(tail.t, tail.neg_log_tail);
  return gof;
}

}  // namespace spikegue
