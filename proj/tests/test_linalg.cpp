#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "spikegue/linalg.hpp"
#include "spikegue/rng.hpp"

using namespace spikegue;

namespace {

HermitianMatrix spiked_sample(int n, int k, std::vector<double> a, std::uint64_t seed) {
  SpikeConfig cfg;
  cfg.N = n;
  cfg.a = std::move(a);
  REQUIRE(cfg.k() == k);
  return apply_spikes(sample_gue(n, seed), cfg);
}

}  // namespace

TEST_CASE("stream seeds are decorrelated and collision-free over a long range") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t t = 0; t < 100000; ++t) {
    seen.insert(stream_seed(42, t));
  }
  CHECK(seen.size() == 100000);
  CHECK(stream_seed(42, 0) != stream_seed(43, 0));
}

TEST_CASE("gue sample is deterministic in the seed and exactly Hermitian") {
  HermitianMatrix A = sample_gue(16, 7);
  HermitianMatrix B = sample_gue(16, 7);
  CHECK((A - B).norm() == 0.0);

  HermitianMatrix C = sample_gue(16, 8);
  CHECK((A - C).norm() > 0.0);

  for (int i = 0; i < 16; ++i) {
    CHECK(A(i, i).imag() == 0.0);
    for (int j = 0; j < 16; ++j) {
      CHECK(A(i, j) == std::conj(A(j, i)));
    }
  }
}

TEST_CASE("gue entry moments match the ensemble over 1e5 draws") {
  // Second-moment oracle: diagonal variance 1, off-diagonal E|g|^2 = 1.
  const int draws = 100000;
  double sum_diag = 0.0, sum_diag_sq = 0.0;
  std::complex<double> sum_off{0.0, 0.0};
  double sum_off_sq = 0.0;
  for (int t = 0; t < draws; ++t) {
    HermitianMatrix M = sample_gue(2, stream_seed(123, t));
    sum_diag += M(0, 0).real();
    sum_diag_sq += M(0, 0).real() * M(0, 0).real();
    sum_off += M(0, 1);
    sum_off_sq += std::norm(M(0, 1));
  }
  const double n = draws;
  // Mean within 3 standard errors of its own spread.
  CHECK(std::abs(sum_diag / n) < 3.0 / std::sqrt(n));
  CHECK(std::abs(sum_off.real() / n) < 3.0 / std::sqrt(2.0 * n));
  CHECK(std::abs(sum_off.imag() / n) < 3.0 / std::sqrt(2.0 * n));
  CHECK(sum_diag_sq / n == doctest::Approx(1.0).epsilon(0.03));
  CHECK(sum_off_sq / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("gue sample rejects empty dimension") {
  CHECK_THROWS_AS(sample_gue(0, 1), config_error);
  CHECK_THROWS_AS(sample_gue(-3, 1), config_error);
}

TEST_CASE("spike strengths follow the critical scaling with a consumed in reverse") {
  SpikeConfig cfg;
  cfg.N = 1000;
  cfg.a = {-1.0, 0.0};
  auto alpha = cfg.alphas();
  const double root = std::sqrt(1000.0);
  const double sixth = std::pow(1000.0, 1.0 / 6.0);
  REQUIRE(alpha.size() == 2);
  // a_2 = 0 pairs with the top spike, a_1 = -1 with the second.
  CHECK(alpha[0] == doctest::Approx(root).epsilon(1e-15));
  CHECK(alpha[1] == doctest::Approx(root - sixth).epsilon(1e-15));
}

TEST_CASE("apply_spikes perturbs exactly the leading diagonal") {
  HermitianMatrix M = sample_gue(8, 5);
  SpikeConfig cfg;
  cfg.N = 8;
  cfg.a = {-1.0, 0.5};
  HermitianMatrix S = apply_spikes(M, cfg);
  auto alpha = cfg.alphas();
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      if (i == j && i < 2) {
        CHECK(S(i, i).real() == doctest::Approx(M(i, i).real() + alpha[i]).epsilon(1e-15));
      } else {
        CHECK(S(i, j) == M(i, j));
      }
    }
  }

  SpikeConfig empty;
  empty.N = 8;
  CHECK((apply_spikes(M, empty) - M).norm() == 0.0);

  SpikeConfig wrong;
  wrong.N = 9;
  CHECK_THROWS_AS(apply_spikes(M, wrong), config_error);

  SpikeConfig toomany;
  toomany.N = 8;
  toomany.a.assign(9, 0.0);
  // Distinctness is irrelevant here; only the count matters.
  for (int i = 0; i < 9; ++i) toomany.a[i] = i;
  CHECK_THROWS_AS(apply_spikes(M, toomany), config_error);
}

TEST_CASE("eigh returns the descending spectrum of a known diagonal matrix") {
  HermitianMatrix D = HermitianMatrix::Zero(3, 3);
  D(0, 0) = 1.0;
  D(1, 1) = 3.0;
  D(2, 2) = 0.0;
  EigenSystem sys = eigh(D);
  CHECK(sys.values[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(sys.values[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sys.values[2] == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  // Eigenvector of lambda = 3 is e_2 up to phase.
  CHECK(std::norm(sys.vectors(1, 0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eigh satisfies the residual, orthonormality and reconstruction contracts") {
  for (int n : {16, 64, 128}) {
    HermitianMatrix A = spiked_sample(n, 2, {-1.0, 0.0}, 1000 + n);
    EigenSystem sys = eigh(A);
    const double scale = A.norm();

    for (int i = 0; i + 1 < n; ++i) CHECK(sys.values[i] > sys.values[i + 1]);

    Eigen::MatrixXcd residual =
        A * sys.vectors - sys.vectors * sys.values.asDiagonal().toDenseMatrix().cast<std::complex<double>>();
    for (int i = 0; i < n; ++i) {
      CHECK(residual.col(i).norm() <= 1e-10 * scale);
      CHECK(std::abs(sys.vectors.col(i).norm() - 1.0) <= 1e-10);
    }

    Eigen::MatrixXcd gram = sys.vectors.adjoint() * sys.vectors;
    CHECK((gram - Eigen::MatrixXcd::Identity(n, n)).norm() <= 1e-10 * n);

    Eigen::MatrixXcd rebuilt = sys.vectors *
                               sys.values.asDiagonal().toDenseMatrix().cast<std::complex<double>>() *
                               sys.vectors.adjoint();
    CHECK((rebuilt - A).norm() <= 1e-10 * std::max(1.0, scale));

    Eigen::VectorXd vals = eigh_values(A);
    CHECK((vals - sys.values).lpNorm<Eigen::Infinity>() <= 1e-10 * std::max(1.0, scale));
  }
}

TEST_CASE("eigh solves the 1x1 case") {
  HermitianMatrix M(1, 1);
  M(0, 0) = -2.5;
  EigenSystem sys = eigh(M);
  CHECK(sys.values[0] == -2.5);
  CHECK(std::norm(sys.vectors(0, 0)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("eigh rejects degenerate spectra") {
  CHECK_THROWS_AS(eigh(HermitianMatrix::Identity(2, 2)), degeneracy_error);
  CHECK_THROWS_AS(eigh_values(HermitianMatrix::Identity(3, 3)), degeneracy_error);
}

TEST_CASE("principal minor drops leading rows and columns") {
  HermitianMatrix M = sample_gue(6, 11);
  HermitianMatrix P = principal_minor(M, 2);
  REQUIRE(P.rows() == 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) CHECK(P(i, j) == M(i + 2, j + 2));
  }
  CHECK(principal_minor(M, 0) == M);
  CHECK_THROWS_AS(principal_minor(M, 6), config_error);
  CHECK_THROWS_AS(principal_minor(M, -1), config_error);
}

TEST_CASE("minor_without matches direct row/column deletion up to spectrum") {
  HermitianMatrix M = sample_gue(7, 21);
  for (int l = 1; l <= 7; ++l) {
    HermitianMatrix via_swap = minor_without(M, l);

    HermitianMatrix direct(6, 6);
    int r = 0;
    for (int i = 0; i < 7; ++i) {
      if (i == l - 1) continue;
      int c = 0;
      for (int j = 0; j < 7; ++j) {
        if (j == l - 1) continue;
        direct(r, c++) = M(i, j);
      }
      ++r;
    }

    Eigen::VectorXd s1 = eigh_values(via_swap);
    Eigen::VectorXd s2 = eigh_values(direct);
    CHECK((s1 - s2).lpNorm<Eigen::Infinity>() <= 1e-12 * std::max(1.0, M.norm()));
  }
  CHECK((minor_without(M, 1) - principal_minor(M, 1)).norm() == 0.0);
  CHECK_THROWS_AS(minor_without(M, 0), config_error);
  CHECK_THROWS_AS(minor_without(M, 8), config_error);
}
