#include "spikegue/eigvec.hpp"

#include <cmath>
#include <string>

namespace spikegue {

namespace {

// Strict interlacing check for a raw (outer, inner) pair arriving from
// outside a MinorChain. Exact ties poison the products with zeros.
void require_interlaced(const Eigen::VectorXd& outer, const Eigen::VectorXd& inner) {
  if (inner.size() + 1 != outer.size()) {
    throw config_error("identity: inner spectrum must have length len(outer) - 1");
  }
  for (int i = 0; i < inner.size(); ++i) {
    if (inner[i] == outer[i] || inner[i] == outer[i + 1]) {
      throw degeneracy_error("identity: exact eigenvalue tie between levels at index " +
                             std::to_string(i + 1));
    }
    if (inner[i] > outer[i] || inner[i] < outer[i + 1]) {
      throw interlacing_error("identity: input spectra are not interlaced at index " +
                              std::to_string(i + 1));
    }
  }
}

}  // namespace

double direct_component_sq(const EigenSystem& sys, int j, int l) {
  const int n = static_cast<int>(sys.values.size());
  if (j < 1 || j > n || l < 1 || l > n) {
    throw config_error("direct_component_sq: indices out of range");
  }
  return std::norm(sys.vectors(l - 1, j - 1));
}

double component_sq_via_identity(const Eigen::VectorXd& outer, const Eigen::VectorXd& inner,
                                 int j) {
  const int n = static_cast<int>(outer.size());
  if (j < 1 || j > n) throw config_error("component_sq_via_identity: j out of range");
  require_interlaced(outer, inner);

  const double sigma_j = outer[j - 1];
  double log_abs = 0.0;
  int negative = 0;
  for (int i = 0; i < n - 1; ++i) {
    const double d = sigma_j - inner[i];
    if (d == 0.0) throw degeneracy_error("component_sq_via_identity: zero numerator factor");
    if (d < 0.0) ++negative;
    log_abs += std::log(std::abs(d));
  }
  for (int i = 0; i < n; ++i) {
    if (i == j - 1) continue;
    const double d = sigma_j - outer[i];
    if (d == 0.0) throw degeneracy_error("component_sq_via_identity: zero denominator factor");
    if (d < 0.0) --negative;
    log_abs -= std::log(std::abs(d));
  }
  // Interlacing pairs every negative numerator factor with a negative
  // denominator factor, so the product is positive; a leftover sign here
  // would mean the inputs lied about interlacing.
  if (negative % 2 != 0) {
    throw interlacing_error("component_sq_via_identity: unpaired sign in product");
  }
  return std::exp(log_abs);
}

double component_sq_identity_for(const HermitianMatrix& M, const Eigen::VectorXd& outer_values,
                                 int j, int l) {
  const Eigen::VectorXd inner = eigh_values(minor_without(M, l));
  return component_sq_via_identity(outer_values, inner, j);
}

double scaled_component_sq(const MinorChain& chain, int j) {
  if (chain.depth() < 2) {
    throw config_error("scaled_component_sq: chain must hold at least two levels");
  }
  const double value = component_sq_via_identity(chain.levels[0], chain.levels[1], j);
  return std::cbrt(static_cast<double>(chain.N)) * value;
}

double xi_truncated(const std::vector<double>& outer, const std::vector<double>& inner, int j,
                    int n) {
  if (j < 1 || n <= j) throw config_error("xi_truncated: requires 1 <= j < n");
  if (static_cast<int>(outer.size()) < n || static_cast<int>(inner.size()) < n - 1) {
    throw config_error("xi_truncated: not enough particles for truncation level n");
  }

  const double xi_j = outer[j - 1];
  double log_abs = 0.0;
  int negative = 0;
  auto fold = [&](double numer, double denom) {
    if (numer == 0.0 || denom == 0.0) {
      throw degeneracy_error("xi_truncated: coincident particles");
    }
    if (numer < 0.0) ++negative;
    if (denom < 0.0) --negative;
    log_abs += std::log(std::abs(numer)) - std::log(std::abs(denom));
  };
  for (int i = 1; i < j; ++i) fold(xi_j - inner[i - 1], xi_j - outer[i - 1]);
  for (int i = j + 1; i <= n; ++i) fold(xi_j - inner[i - 2], xi_j - outer[i - 1]);
  if (negative % 2 != 0) {
    throw interlacing_error("xi_truncated: unpaired sign, particles not interlaced");
  }
  return std::cbrt(static_cast<double>(n)) * std::exp(log_abs);
}

double log_tail_product(const Eigen::VectorXd& outer, const Eigen::VectorXd& inner, int j,
                        int L) {
  const int n = static_cast<int>(outer.size());
  if (j < 1 || j > L || L >= n) throw config_error("log_tail_product: requires 1 <= j <= L < N");
  require_interlaced(outer, inner);

  const double sigma_j = outer[j - 1];
  double sum = 0.0;
  for (int i = L + 1; i <= n; ++i) {
    // Both factors are positive: the tail lies strictly below sigma_j.
    sum += std::log(sigma_j - inner[i - 2]) - std::log(sigma_j - outer[i - 1]);
  }
  return sum;
}

}  // namespace spikegue
