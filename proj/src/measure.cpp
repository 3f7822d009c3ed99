#include "spikegue/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spikegue/errors.hpp"
#include "spikegue/quadrature.hpp"

namespace spikegue {

double StepMeasure::total_mass() const {
  double mass = 0.0;
  for (std::size_t i = 0; i < lower.size(); ++i) mass += upper[i] - lower[i];
  return mass;
}

StepMeasure build_step_measure(const Eigen::VectorXd& outer, const Eigen::VectorXd& inner) {
  const int n = static_cast<int>(outer.size());
  if (n < 2 || inner.size() != n - 1) {
    throw config_error("build_step_measure: need N >= 2 outer and N-1 inner eigenvalues");
  }
  StepMeasure m;
  m.lower.reserve(n - 1);
  m.upper.reserve(n - 1);
  for (int i = 2; i <= n; ++i) {
    const double lo = outer[i - 1];
    const double hi = inner[i - 2];
    if (!(hi > lo) || !(outer[i - 2] > hi)) {
      throw interlacing_error("build_step_measure: spectra not strictly interlaced at index " +
                              std::to_string(i));
    }
    m.lower.push_back(lo);
    m.upper.push_back(hi);
  }
  return m;
}

double measure_tail(const StepMeasure& m, double x) {
  double mass = 0.0;
  for (std::size_t i = 0; i < m.lower.size(); ++i) {
    mass += std::max(0.0, m.upper[i] - std::max(m.lower[i], x));
  }
  return mass;
}

double integrate_against(const StepMeasure& m, const std::function<double(double)>& f,
                         double cutoff) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.lower.size(); ++i) {
    if (m.upper[i] <= cutoff) {
      sum += adaptive_integrate(f, m.lower[i], m.upper[i]);
    }
  }
  return sum;
}

namespace {

// Edge-stable pieces shared by both closed moments: x clamped into the
// spectrum, 4N - x^2 factored as (2 sqrt(N) - x)(2 sqrt(N) + x) so the value
// near the edges comes from a difference computed without cancellation.
struct ClosedParts {
  double x;
  double edge;       // 2 sqrt(N)
  double root;       // sqrt(4N - x^2)
  double angle;      // arccos(x / 2 sqrt(N))
};

ClosedParts closed_parts(int N, double x) {
  if (N < 1) throw config_error("closed moments: N must be positive");
  ClosedParts p;
  p.edge = 2.0 * std::sqrt(static_cast<double>(N));
  p.x = std::clamp(x, -p.edge, p.edge);
  p.root = std::sqrt((p.edge - p.x) * (p.edge + p.x));
  p.angle = std::acos(std::clamp(p.x / p.edge, -1.0, 1.0));
  return p;
}

}  // namespace

double e_n_closed(int N, double x) {
  const ClosedParts p = closed_parts(N, x);
  const double pi = std::numbers::pi;
  return (-p.root + p.x * p.angle) / (2.0 * pi) + std::sqrt(static_cast<double>(N)) - p.x / 2.0;
}

double v_n_closed(int N, double x) {
  const ClosedParts p = closed_parts(N, x);
  const double pi = std::numbers::pi;
  return (p.root / p.edge + p.angle) / pi;
}

std::pair<double, double> airy_asymptotics(double xi) {
  if (!(xi <= -1.0)) {
    throw config_error("airy_asymptotics: expansion valid for xi <= -1 only");
  }
  return {-xi / 2.0, (2.0 / std::numbers::pi) * std::sqrt(-xi)};
}

double airy_variance_with_spike(double xi, double a_k) {
  return airy_asymptotics(xi).second + a_k;
}

std::string regime_tag(int N, double x) {
  const double edge_coord = std::pow(static_cast<double>(N), 1.0 / 6.0) *
                            (x - 2.0 * std::sqrt(static_cast<double>(N)));
  return std::abs(edge_coord) <= 12.0 ? "edge" : "bulk";
}

}  // namespace spikegue
