#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "spikegue/errors.hpp"
#include "spikegue/quadrature.hpp"
#include "spikegue/rng.hpp"
#include "spikegue/stats.hpp"

using namespace spikegue;

namespace {

std::vector<double> exp1_draws(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> out(n);
  for (double& v : out) v = -std::log(rng.uniform01());
  return out;
}

}  // namespace

TEST_CASE("interquartile range interpolates order statistics") {
  // Sorted 1..5: q75 at rank 3, q25 at rank 1 (zero-based), gap exactly 2.
  CHECK(interquartile_range({5.0, 1.0, 4.0, 2.0, 3.0}) == doctest::Approx(2.0).epsilon(1e-14));
  // Two points: quartiles interpolate the single gap, IQR = half of it.
  CHECK(interquartile_range({0.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(interquartile_range({1.0}), config_error);
}

TEST_CASE("silverman bandwidth floors degenerate samples") {
  CHECK(silverman_bandwidth({0.0, 0.0}) == 1e-3);
  // Non-degenerate: 0.9 * min(sd, IQR/1.34) * n^{-1/5} by hand for 1..5,
  // sd = sqrt(2.5), IQR/1.34 = 2/1.34 (the smaller of the two).
  const double by_hand = 0.9 * (2.0 / 1.34) * std::pow(5.0, -0.2);
  CHECK(silverman_bandwidth({1.0, 2.0, 3.0, 4.0, 5.0}) ==
        doctest::Approx(by_hand).epsilon(1e-14));
}

TEST_CASE("kde matches the gaussian mixture by hand") {
  const std::vector<double> sample{-1.0, 1.0};
  const double h = 0.5;
  // Two kernels at +-1: density at 0 is 2 * phi(2) / (2 * 0.5).
  const double expect = std::exp(-2.0) / (0.5 * std::sqrt(2.0 * 3.14159265358979323846) * 2.0) * 2.0;
  CHECK(kde_eval(sample, h, 0.0) == doctest::Approx(expect).epsilon(1e-12));
  CHECK_THROWS_AS(kde_eval(sample, 0.0, 0.0), config_error);
  CHECK_THROWS_AS(kde_eval({}, 1.0, 0.0), config_error);
}

TEST_CASE("kde integrates to one over an extended window") {
  const std::vector<double> sample = exp1_draws(400, stream_seed(900, 0));
  const double h = silverman_bandwidth(sample);
  double lo = sample[0], hi = sample[0];
  for (double v : sample) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double mass = adaptive_integrate([&](double x) { return kde_eval(sample, h, x); },
                                         lo - 6.0 * h, hi + 6.0 * h, 1e-10);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("kde curve covers the sample with margin and tracks pointwise eval") {
  const std::vector<double> sample = exp1_draws(200, stream_seed(901, 0));
  KdeCurve curve = kde_curve(sample);
  double lo = sample[0], hi = sample[0];
  for (double v : sample) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(curve.x.front() == doctest::Approx(lo - 3.0 * curve.bandwidth).epsilon(1e-12));
  CHECK(curve.x.back() == doctest::Approx(hi + 3.0 * curve.bandwidth).epsilon(1e-12));
  CHECK(curve.x.size() == curve.density.size());
  // Spacing at most ~h/2 plus rounding.
  CHECK(curve.x[1] - curve.x[0] <= 0.51 * curve.bandwidth);
  for (std::size_t i = 0; i < curve.x.size(); i += 7) {
    CHECK(curve.density[i] ==
          doctest::Approx(kde_eval(sample, curve.bandwidth, curve.x[i])).epsilon(1e-13));
  }
}

TEST_CASE("kde density approximates the exponential law at scale") {
  const std::vector<double> sample = exp1_draws(100000, stream_seed(902, 0));
  const double h = silverman_bandwidth(sample);
  CHECK(kde_eval(sample, h, 0.5) == doctest::Approx(std::exp(-0.5)).epsilon(0.05 / std::exp(-0.5)));
}

TEST_CASE("tail curve counts and censors exactly") {
  // Sample {0.1, 0.6, 1.1, 2.2}: counts above 0.5, 1.0, ..., then censored.
  const std::vector<double> sample{0.1, 0.6, 1.1, 2.2};
  TailCurve curve = tail_curve(sample, 0.5, 3.0, 0.5);
  REQUIRE(curve.t.size() == 4);  // 2.5 and 3.0 have no exceedances
  CHECK(curve.count_above[0] == 3);
  CHECK(curve.count_above[1] == 2);
  CHECK(curve.count_above[2] == 1);
  CHECK(curve.count_above[3] == 1);
  CHECK(curve.neg_log_tail[0] == doctest::Approx(-std::log(0.75)).epsilon(1e-14));
  CHECK(curve.neg_log_tail[3] == doctest::Approx(-std::log(0.25)).epsilon(1e-14));
  // Threshold equal to a sample point is not an exceedance.
  TailCurve at_point = tail_curve(sample, 2.2, 2.2, 1.0);
  CHECK(at_point.t.empty());
  CHECK_THROWS_AS(tail_curve({}, 0.0, 1.0, 0.5), config_error);
  CHECK_THROWS_AS(tail_curve(sample, 0.0, 1.0, 0.0), config_error);
}

TEST_CASE("tail slope of an exponential sample is near one") {
  const std::vector<double> sample = exp1_draws(100000, stream_seed(903, 0));
  TailCurve curve = tail_curve(sample, 0.5, 3.0, 0.05);
  CHECK(least_squares_slope(curve.t, curve.neg_log_tail) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("least squares slope recovers an exact line") {
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> y{1.0, 3.5, 6.0, 8.5};
  CHECK(least_squares_slope(x, y) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK_THROWS_AS(least_squares_slope({1.0}, {2.0}), config_error);
  CHECK_THROWS_AS(least_squares_slope({1.0, 2.0}, {2.0}), config_error);
  CHECK_THROWS_AS(least_squares_slope({1.0, 1.0}, {2.0, 3.0}), config_error);
}

TEST_CASE("one sample KS distance against the exponential law") {
  // Single point at log 2: F(log 2) = 1/2, ecdf jumps 0 -> 1, distance 1/2.
  CHECK(ks_exp1({std::log(2.0)}) == doctest::Approx(0.5).epsilon(1e-14));
  const std::vector<double> sample = exp1_draws(10000, stream_seed(904, 0));
  CHECK(ks_exp1(sample) <= 0.02);
  // A unit shift is detected head-on.
  std::vector<double> shifted(sample);
  for (double& v : shifted) v += 1.0;
  CHECK(ks_exp1(shifted) >= 0.3);
}

TEST_CASE("two sample KS distance") {
  // Disjoint supports: distance 1.
  CHECK(ks_two_sample({0.0, 1.0}, {2.0, 3.0}) == doctest::Approx(1.0).epsilon(1e-14));
  // Identical samples: distance 0.
  CHECK(ks_two_sample({1.0, 2.0, 3.0}, {3.0, 1.0, 2.0}) == doctest::Approx(0.0).epsilon(1e-14));
  const std::vector<double> a = exp1_draws(5000, stream_seed(905, 0));
  const std::vector<double> b = exp1_draws(5000, stream_seed(905, 1));
  CHECK(ks_two_sample(a, b) <= 0.04);
  CHECK_THROWS_AS(ks_two_sample({}, {1.0}), config_error);
}

TEST_CASE("exponential goodness of fit summary on a true exponential sample") {
  const std::vector<double> sample = exp1_draws(10000, stream_seed(906, 0));
  Exp1Gof gof = exp1_gof(sample);
  CHECK(gof.ks <= 0.02);
  CHECK(gof.mean == doctest::Approx(1.0).epsilon(0.03));
  CHECK(gof.tail_slope == doctest::Approx(1.0).epsilon(0.1));
}
