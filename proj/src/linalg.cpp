#include "spikegue/linalg.hpp"

#include <cmath>
#include <mutex>
#include <string>

#include "spikegue/rng.hpp"

// LAPACKE with std::complex payloads instead of C99 _Complex.
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

// Present when OpenBLAS is the BLAS; weak so other BLASes still link.
extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace spikegue {

namespace {

// A BLAS that threads internally would make results depend on its pool
// size; trial-level parallelism is ours, so pin BLAS to one thread.
void pin_blas_threads() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    if (openblas_set_num_threads != nullptr) openblas_set_num_threads(1);
  });
}

void check_gaps(const Eigen::VectorXd& descending, double frobenius) {
  const double tol = 1e-12 * std::max(1.0, frobenius);
  for (int i = 0; i + 1 < descending.size(); ++i) {
    if (descending[i] - descending[i + 1] < tol) {
      throw degeneracy_error("spectrum gap below 1e-12 relative resolution at index " +
                             std::to_string(i + 1));
    }
  }
}

// zheevd returns ascending eigenvalues; every consumer here wants
// descending, so reverse in place (and mirror columns when present).
void solve_hermitian(const HermitianMatrix& M, Eigen::VectorXd& values,
                     Eigen::MatrixXcd* vectors) {
  if (M.rows() == 0) throw config_error("eigh: empty matrix");
  if (M.rows() != M.cols()) throw config_error("eigh: matrix not square");
  pin_blas_threads();

  const lapack_int n = static_cast<lapack_int>(M.rows());
  Eigen::MatrixXcd work = M;  // overwritten by LAPACK
  Eigen::VectorXd ascending(n);
  lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, vectors != nullptr ? 'V' : 'N', 'L', n,
                                   work.data(), n, ascending.data());
  if (info != 0) {
    throw std::runtime_error("LAPACKE_zheevd failed with info=" + std::to_string(info));
  }

  values.resize(n);
  for (lapack_int i = 0; i < n; ++i) values[i] = ascending[n - 1 - i];
  if (vectors != nullptr) {
    vectors->resize(n, n);
    for (lapack_int i = 0; i < n; ++i) vectors->col(i) = work.col(n - 1 - i);
  }
  check_gaps(values, M.norm());
}

}  // namespace

std::vector<double> SpikeConfig::alphas() const {
  std::vector<double> out(a.size());
  const double root_n = std::sqrt(static_cast<double>(N));
  const double sixth = std::pow(static_cast<double>(N), 1.0 / 6.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = root_n + sixth * a[a.size() - 1 - i];
  }
  return out;
}

HermitianMatrix sample_gue(int n, std::uint64_t seed) {
  if (n <= 0) throw config_error("sample_gue: dimension must be positive");
  Rng rng(seed);
  HermitianMatrix M(n, n);
  for (int i = 0; i < n; ++i) {
    M(i, i) = std::complex<double>(rng.gaussian(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      std::complex<double> z = rng.gaussian_half_pair();
      M(i, j) = z;
      M(j, i) = std::conj(z);
    }
  }
  return M;
}

HermitianMatrix apply_spikes(const HermitianMatrix& M, const SpikeConfig& cfg) {
  if (cfg.N != M.rows() || M.rows() != M.cols()) {
    throw config_error("apply_spikes: config dimension does not match matrix");
  }
  if (cfg.k() > cfg.N) throw config_error("apply_spikes: more spikes than dimensions");
  HermitianMatrix out = M;
  const std::vector<double> alpha = cfg.alphas();
  for (int i = 0; i < cfg.k(); ++i) out(i, i) += alpha[i];
  return out;
}

EigenSystem eigh(const HermitianMatrix& M) {
  EigenSystem sys;
  solve_hermitian(M, sys.values, &sys.vectors);
  return sys;
}

Eigen::VectorXd eigh_values(const HermitianMatrix& M) {
  Eigen::VectorXd values;
  solve_hermitian(M, values, nullptr);
  return values;
}

HermitianMatrix principal_minor(const HermitianMatrix& M, int drop) {
  const int n = static_cast<int>(M.rows());
  if (drop < 0 || drop >= n) {
    throw config_error("principal_minor: drop count out of range");
  }
  return M.bottomRightCorner(n - drop, n - drop);
}

HermitianMatrix minor_without(const HermitianMatrix& M, int l) {
  const int n = static_cast<int>(M.rows());
  if (l < 1 || l > n) throw config_error("minor_without: index out of range");
  HermitianMatrix swapped = M;
  if (l != 1) {
    swapped.row(0).swap(swapped.row(l - 1));
    swapped.col(0).swap(swapped.col(l - 1));
  }
  return principal_minor(swapped, 1);
}

}  // namespace spikegue
