#include "spikegue/spectra.hpp"

#include <json.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace spikegue {

namespace {

// Mass of the semicircle density to the right of u, for u in [-2, 2]:
// integral_u^2 (1/2pi) sqrt(4 - x^2) dx in closed form.
double semicircle_tail(double u) {
  const double pi = std::numbers::pi;
  return 0.5 - u * std::sqrt(4.0 - u * u) / (4.0 * pi) - std::asin(u / 2.0) / pi;
}

}  // namespace

MinorChain build_minor_chain(const HermitianMatrix& M, int depth) {
  const int n = static_cast<int>(M.rows());
  if (depth < 1 || depth > n) {
    throw config_error("build_minor_chain: depth must lie in [1, dim]");
  }

  MinorChain chain;
  chain.N = n;
  chain.levels.reserve(depth);
  for (int d = 0; d < depth; ++d) {
    chain.levels.push_back(eigh_values(principal_minor(M, d)));
  }

  for (int d = 0; d + 1 < depth; ++d) {
    const Eigen::VectorXd& outer = chain.levels[d];
    const Eigen::VectorXd& inner = chain.levels[d + 1];
    const double scale = std::max({1.0, std::abs(outer[0]), std::abs(outer[outer.size() - 1])});
    const double tol = 1e-12 * scale;
    for (int i = 0; i < inner.size(); ++i) {
      const double upper_gap = outer[i] - inner[i];
      const double lower_gap = inner[i] - outer[i + 1];
      for (double gap : {upper_gap, lower_gap}) {
        if (gap < -tol) {
          throw interlacing_error("interlacing violated at level " + std::to_string(d) +
                                  ", index " + std::to_string(i + 1) + " by " +
                                  std::to_string(-gap));
        }
        if (gap <= tol) chain.interlacing = InterlacingStatus::degenerate;
      }
    }
  }
  return chain;
}

std::vector<double> scaled_edge_coords(const Eigen::VectorXd& values, int N, int m) {
  if (N < 1) throw config_error("scaled_edge_coords: N must be positive");
  if (m < 1 || m > values.size()) {
    throw config_error("scaled_edge_coords: m must lie in [1, len(values)]");
  }
  const double edge = 2.0 * std::sqrt(static_cast<double>(N));
  const double scale = std::pow(static_cast<double>(N), 1.0 / 6.0);
  std::vector<double> out(m);
  for (int i = 0; i < m; ++i) out[i] = scale * (values[i] - edge);
  return out;
}

double semicircle_quantile(int N, int i) {
  if (N < 1 || i < 1 || i > N) throw config_error("semicircle_quantile: index out of range");
  // Descending convention to match eigh: i = 1 is the top eigenvalue's
  // classical location, so the tail mass above it is (i - 1/2)/N.
  const double target = (static_cast<double>(i) - 0.5) / N;

  // semicircle_tail decreases from 1 at u = -2 to 0 at u = 2; plain
  // bisection reaches the floating-point floor in under 60 steps.
  double lo = -2.0, hi = 2.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (semicircle_tail(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15) break;
  }
  const double u = 0.5 * (lo + hi);
  if (std::abs(semicircle_tail(u) - target) > 1e-12) {
    throw std::runtime_error("semicircle_quantile: bisection residual above 1e-12");
  }
  return u * std::sqrt(static_cast<double>(N));
}

RigidityReport rigidity_report(const Eigen::VectorXd& values, double epsilon, double cut) {
  const int N = static_cast<int>(values.size());
  if (N < 1) throw config_error("rigidity_report: empty spectrum");
  if (cut <= 0.0 || cut >= 1.0) throw config_error("rigidity_report: cut must lie in (0, 1)");

  RigidityReport report;
  report.N = N;
  report.epsilon = epsilon;
  report.cut = cut;

  const int checked = std::max(1, static_cast<int>(std::floor((1.0 - cut) * N)));
  const double n_factor = std::pow(static_cast<double>(N), -1.0 / 6.0 + epsilon);
  int satisfied = 0;
  double worst_ratio = -1.0;
  for (int i = 1; i <= checked; ++i) {
    const double bound = n_factor * std::pow(static_cast<double>(i), -1.0 / 3.0);
    const double deviation = std::abs(values[i - 1] - semicircle_quantile(N, i));
    if (deviation <= bound) ++satisfied;
    if (deviation / bound > worst_ratio) {
      worst_ratio = deviation / bound;
      report.worst_index = i;
      report.worst_deviation = deviation;
    }
  }
  report.satisfied_fraction = static_cast<double>(satisfied) / checked;
  return report;
}

RigidityReport rigidity_report(const MinorChain& chain, double epsilon, double cut) {
  if (chain.levels.empty()) throw config_error("rigidity_report: empty chain");
  return rigidity_report(chain.levels[0], epsilon, cut);
}

std::string to_json(const RigidityReport& report) {
  nlohmann::json j;
  j["N"] = report.N;
  j["epsilon"] = report.epsilon;
  j["cut"] = report.cut;
  j["satisfied_fraction"] = report.satisfied_fraction;
  j["worst_index"] = report.worst_index;
  j["worst_deviation"] = report.worst_deviation;
  return j.dump();
}

}  // namespace spikegue
