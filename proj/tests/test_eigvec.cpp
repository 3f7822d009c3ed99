#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "spikegue/eigvec.hpp"
#include "spikegue/measure.hpp"
#include "spikegue/rng.hpp"

using namespace spikegue;

namespace {

HermitianMatrix spiked_sample(int n, std::vector<double> a, std::uint64_t seed) {
  SpikeConfig cfg;
  cfg.N = n;
  cfg.a = std::move(a);
  return apply_spikes(sample_gue(n, seed), cfg);
}

}  // namespace

TEST_CASE("2x2 symmetric matrix: identity reproduces the hand-computed component") {
  HermitianMatrix M(2, 2);
  M << 2.0, 1.0, 1.0, 3.0;
  EigenSystem sys = eigh(M);
  const double root5 = std::sqrt(5.0);
  REQUIRE(sys.values[0] == doctest::Approx(2.5 + root5 / 2.0).epsilon(1e-14));

  // Top eigenvector of [[2,1],[1,3]] has |first coord|^2 = (sigma_1 - 3)/sqrt(5).
  const double expected = (sys.values[0] - 3.0) / root5;
  CHECK(direct_component_sq(sys, 1, 1) == doctest::Approx(expected).epsilon(1e-12));

  Eigen::VectorXd inner1 = eigh_values(minor_without(M, 1));
  CHECK(inner1[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(component_sq_via_identity(sys.values, inner1, 1) ==
        doctest::Approx(expected).epsilon(1e-12));

  // l = 2 swaps in the other diagonal entry; components of one vector sum to 1.
  CHECK(component_sq_identity_for(M, sys.values, 1, 2) ==
        doctest::Approx(1.0 - expected).epsilon(1e-12));
  CHECK_THROWS_AS(direct_component_sq(sys, 0, 1), config_error);
  CHECK_THROWS_AS(direct_component_sq(sys, 1, 3), config_error);
}

TEST_CASE("identity route matches the eigendecomposition at every (j, l)") {
  const int n = 8;
  for (int trial = 0; trial < 20; ++trial) {
    HermitianMatrix M = spiked_sample(n, {-1.0, 0.0}, stream_seed(11, trial));
    EigenSystem sys = eigh(M);
    for (int l = 1; l <= n; ++l) {
      for (int j = 1; j <= n; ++j) {
        const double direct = direct_component_sq(sys, j, l);
        const double via_identity = component_sq_identity_for(M, sys.values, j, l);
        CHECK(std::abs(direct - via_identity) <= 1e-10);
      }
    }
  }
}

TEST_CASE("scaled component is cbrt(N) times the level-(1,2) identity") {
  const int N = 16;
  HermitianMatrix M = spiked_sample(N, {0.0}, 901);
  MinorChain chain = build_minor_chain(M, 2);
  for (int j : {1, 2, 5}) {
    const double plain = component_sq_via_identity(chain.levels[0], chain.levels[1], j);
    CHECK(scaled_component_sq(chain, j) ==
          doctest::Approx(std::cbrt(16.0) * plain).epsilon(1e-14));
  }
  MinorChain shallow = build_minor_chain(M, 1);
  CHECK_THROWS_AS(scaled_component_sq(shallow, 1), config_error);
}

TEST_CASE("two-particle truncation evaluates to cbrt(2)/2 by hand") {
  const std::vector<double> outer = {1.0, -1.0};
  const std::vector<double> inner = {0.0};
  CHECK(xi_truncated(outer, inner, 1, 2) ==
        doctest::Approx(std::cbrt(2.0) / 2.0).epsilon(1e-14));
  CHECK_THROWS_AS(xi_truncated(outer, inner, 2, 2), config_error);
  CHECK_THROWS_AS(xi_truncated(outer, inner, 1, 3), config_error);
}

TEST_CASE("full truncation in scaled coordinates equals the scaled identity") {
  const int N = 64;
  HermitianMatrix M = spiked_sample(N, {-1.0, 0.0}, 5150);
  MinorChain chain = build_minor_chain(M, 2);
  auto xi = scaled_edge_coords(chain.levels[0], N, N);
  auto eta = scaled_edge_coords(chain.levels[1], N, N - 1);
  for (int j : {1, 2, 5}) {
    const double full = xi_truncated(xi, eta, j, N);
    const double scaled = scaled_component_sq(chain, j);
    CHECK(full == doctest::Approx(scaled).epsilon(1e-9));
  }
}

TEST_CASE("tail of the log product is the step-measure Stieltjes integral") {
  const int N = 64;
  const int L = 8;
  HermitianMatrix M = spiked_sample(N, {0.0}, 31337);
  MinorChain chain = build_minor_chain(M, 2);
  const Eigen::VectorXd& outer = chain.levels[0];
  const Eigen::VectorXd& inner = chain.levels[1];

  StepMeasure sm = build_step_measure(outer, inner);
  for (int j : {1, 3, 8}) {
    const double sigma_j = outer[j - 1];
    const double direct = log_tail_product(outer, inner, j, L);
    const double integral =
        integrate_against(sm, [sigma_j](double x) { return 1.0 / (sigma_j - x); }, inner[L - 1]);
    CHECK(direct == doctest::Approx(-integral).epsilon(1e-9));
  }
  CHECK_THROWS_AS(log_tail_product(outer, inner, 9, 8), config_error);
  CHECK_THROWS_AS(log_tail_product(outer, inner, 1, N), config_error);
}

TEST_CASE("identity rejects spectra that are tied or out of order") {
  Eigen::VectorXd outer(3), inner(2);
  outer << 3.0, 2.0, 1.0;

  inner << 3.0, 1.5;  // tied with outer[0]
  CHECK_THROWS_AS(component_sq_via_identity(outer, inner, 1), degeneracy_error);

  inner << 3.5, 1.5;  // above the outer top
  CHECK_THROWS_AS(component_sq_via_identity(outer, inner, 1), interlacing_error);

  inner << 2.5, 1.5;
  CHECK_THROWS_AS(component_sq_via_identity(outer, inner, 0), config_error);
  Eigen::VectorXd short_inner(1);
  short_inner << 2.5;
  CHECK_THROWS_AS(component_sq_via_identity(outer, short_inner, 1), config_error);
}
