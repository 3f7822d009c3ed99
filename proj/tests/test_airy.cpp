#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gsl/gsl_sf_airy.h>

#include <cmath>

#include <complex>
#include <vector>

#include "spikegue/airy.hpp"
#include "spikegue/errors.hpp"
#include "spikegue/kernels.hpp"

using namespace spikegue;

TEST_CASE("values at zero match the gamma-function constants") {
  AiryPair p = airy(0.0);
  CHECK(p.ai == doctest::Approx(0.3550280538878172).epsilon(1e-14));
  CHECK(p.aip == doctest::Approx(-0.2588194037928068).epsilon(1e-14));
}

TEST_CASE("series region agrees with GSL to 1e-12 absolute") {
  for (double x = -8.0; x <= 8.0; x += 0.25) {
    AiryPair p = airy(x);
    CHECK(std::abs(p.ai - gsl_sf_airy_Ai(x, GSL_PREC_DOUBLE)) <= 1e-12);
    CHECK(std::abs(p.aip - gsl_sf_airy_Ai_deriv(x, GSL_PREC_DOUBLE)) <= 1e-12);
  }
}

TEST_CASE("decaying asymptotic region agrees with GSL to 1e-10 relative") {
  for (double x : {8.5, 9.0, 10.0, 12.0, 16.0, 20.0, 25.0, 32.0, 40.0}) {
    AiryPair p = airy(x);
    const double ai = gsl_sf_airy_Ai(x, GSL_PREC_DOUBLE);
    const double aip = gsl_sf_airy_Ai_deriv(x, GSL_PREC_DOUBLE);
    CHECK(p.ai == doctest::Approx(ai).epsilon(1e-10));
    CHECK(p.aip == doctest::Approx(aip).epsilon(1e-10));
  }
}

TEST_CASE("oscillatory asymptotic region agrees with GSL at envelope scale") {
  // Near a zero of Ai the pointwise relative error is meaningless, so the
  // comparison is relative to the local oscillation envelope z^(-+1/4)/sqrt(pi).
  for (double x : {-8.5, -9.0, -10.0, -12.0, -16.0, -20.0, -25.0, -32.0, -40.0}) {
    AiryPair p = airy(x);
    const double z = -x;
    const double env_ai = std::pow(z, -0.25) / std::sqrt(M_PI);
    const double env_aip = std::pow(z, 0.25) / std::sqrt(M_PI);
    CHECK(std::abs(p.ai - gsl_sf_airy_Ai(x, GSL_PREC_DOUBLE)) <= 1e-10 * env_ai);
    CHECK(std::abs(p.aip - gsl_sf_airy_Ai_deriv(x, GSL_PREC_DOUBLE)) <= 1e-10 * env_aip);
  }
}

TEST_CASE("finite differences satisfy Ai'' = x Ai and match Ai'") {
  // Five-point stencils, h = 0.01: truncation ~h^4, roundoff ~1e-12.
  const double h = 0.01;
  for (double x = -3.0; x <= 3.0; x += 0.5) {
    const double f2 = airy_ai(x + 2.0 * h), f1 = airy_ai(x + h);
    const double fm1 = airy_ai(x - h), fm2 = airy_ai(x - 2.0 * h);
    const double f0 = airy_ai(x);
    const double second = (-f2 + 16.0 * f1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
    CHECK(std::abs(second - x * f0) <= 1e-8);
    const double first = (-f2 + 8.0 * f1 - 8.0 * fm1 + fm2) / (12.0 * h);
    CHECK(std::abs(first - airy_ai_prime(x)) <= 1e-8);
  }
}

TEST_CASE("series and asymptotics join smoothly at the switch point") {
  // Straddle by 1e-13 so the genuine increment |Ai'| dx ~ 1e-13 stays an
  // order below the tolerance; any branch mismatch would dwarf both.
  for (double sign : {1.0, -1.0}) {
    AiryPair inside = airy(sign * (8.0 - 1e-13));
    AiryPair outside = airy(sign * (8.0 + 1e-13));
    CHECK(std::abs(inside.ai - outside.ai) <= 1e-12);
    CHECK(std::abs(inside.aip - outside.aip) <= 1e-12);
  }
}

TEST_CASE("domain is guarded") {
  CHECK_THROWS_AS(airy(40.5), config_error);
  CHECK_THROWS_AS(airy(-40.5), config_error);
  CHECK_NOTHROW(airy(40.0));
  CHECK_NOTHROW(airy(-40.0));
}

TEST_CASE("closed airy kernel is symmetric with the right diagonal") {
  // K(0,0) = Ai'(0)^2 since the x Ai(x)^2 term vanishes at the origin.
  const double aip0 = airy_ai_prime(0.0);
  CHECK(airy_kernel_closed(0.0, 0.0) == doctest::Approx(aip0 * aip0).epsilon(1e-14));
  CHECK(airy_kernel_closed(0.0, 0.0) == doctest::Approx(0.0669874838).epsilon(1e-8));

  for (double x : {-2.0, -0.5, 0.0, 1.0, 2.5}) {
    for (double y : {-1.5, 0.5, 2.0}) {
      CHECK(airy_kernel_closed(x, y) == doctest::Approx(airy_kernel_closed(y, x)).epsilon(1e-13));
    }
  }

  // The divided-difference form hands off to the midpoint formula without a
  // jump: compare just inside and outside the switch radius. The genuine
  // increment |dK/dy| * 2e-7 ~ 2e-9 dominates; a branch mismatch would not.
  const double in = airy_kernel_closed(1.0, 1.0 + 0.9e-6);
  const double out = airy_kernel_closed(1.0, 1.0 + 1.1e-6);
  CHECK(std::abs(in - out) <= 1e-8);
}

TEST_CASE("contour kernel without spikes reproduces the closed form") {
  for (double x : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
    for (double y : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
      KernelValue kv = extended_airy_kernel(0, 0, {}, x, y);
      CHECK(std::abs(kv.value - airy_kernel_closed(x, y)) <= 1e-8);
    }
  }
}

TEST_CASE("single contour term matches the residue sum") {
  // One pole between the species indices: -e^{(y-x) a_1} with empty product.
  CHECK(airy_single_contour_term(0, 1, {0.0}, 0.0, 1.0) == doctest::Approx(-1.0).epsilon(1e-14));
  // Absent unless the species indices are strictly increasing and x < y.
  CHECK(airy_single_contour_term(1, 1, {0.0}, 0.0, 1.0) == 0.0);
  CHECK(airy_single_contour_term(1, 0, {0.0}, 0.0, 1.0) == 0.0);
  CHECK(airy_single_contour_term(0, 1, {0.0}, 1.0, 0.0) == 0.0);
  CHECK(airy_single_contour_term(0, 1, {0.0}, 1.0, 1.0) == 0.0);
  // Two poles: -sum_l e^{(y-x) a_l} / prod_{j != l} (a_l - a_j).
  const double x = -0.5, y = 0.75;
  const double expect = -(std::exp((y - x) * 1.0) / (1.0 - -1.0) + std::exp((y - x) * -1.0) / (-1.0 - 1.0));
  CHECK(airy_single_contour_term(0, 2, {1.0, -1.0}, x, y) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("contour kernel with spikes stays finite and symmetric in its error") {
  // With one spike at 0 the kernel at the origin shifts away from the
  // spikeless value; sanity: finite, small reported error.
  KernelValue kv = extended_airy_kernel(1, 1, {0.0}, 0.0, 0.0);
  CHECK(std::isfinite(kv.value));
  CHECK(kv.est_error <= 1e-6);
}

TEST_CASE("finite-size kernel approaches the contour limit") {
  // Moderate size keeps this test quick; the acceptance run checks the
  // decay of the gap across a size ladder.
  const std::vector<double> a{0.0};
  KernelValue limit = extended_airy_kernel(1, 1, a, 0.0, 0.0);
  KernelValue finite = scaled_gue_kernel(40, 1, a, 0, 0, 0.0, 0.0);
  CHECK(std::abs(finite.value - limit.value) <= 0.1);
}

TEST_CASE("kernel argument validation") {
  CHECK_THROWS_AS(extended_airy_kernel(0, 0, {}, 0.0, 0.0, 8), config_error);
  CHECK_THROWS_AS(extended_airy_kernel(1, 2, {0.0}, 0.0, 0.0), config_error);
  CHECK_THROWS_AS(extended_airy_kernel(1, 1, {0.5, 0.5}, 0.0, 0.0), config_error);
  CHECK_THROWS_AS(airy_single_contour_term(0, 2, {0.0}, 0.0, 1.0), config_error);
  CHECK_THROWS_AS(scaled_gue_kernel(1, 0, {}, 0, 0, 0.0, 0.0), config_error);
  CHECK_THROWS_AS(scaled_gue_kernel(40, 2, {0.0}, 0, 0, 0.0, 0.0), config_error);
  CHECK_THROWS_AS(scaled_gue_kernel(40, 1, {0.0}, 0, 2, 0.0, 0.0), config_error);
  CHECK_THROWS_AS(scaled_gue_kernel(40, 1, {0.0}, -1, 0, 0.0, 0.0), config_error);
}
