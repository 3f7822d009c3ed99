#include "spikegue/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace spikegue {

namespace {

GaussLegendre compute_rule(int order) {
  GaussLegendre rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  // Newton from the Chebyshev-angle initial guess; converges in a handful
  // of steps for every practical order.
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussLegendre& gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  static std::map<int, GaussLegendre> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

double gl_integrate(const std::function<double(double)>& f, double a, double b, int order) {
  const GaussLegendre& rule = gauss_legendre(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < order; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

namespace {

double adaptive_step(const std::function<double(double)>& f, double a, double b, double whole,
                     double tol, int order, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gl_integrate(f, a, mid, order);
  const double right = gl_integrate(f, mid, b, order);
  if (depth <= 0) return left + right;
  if (std::abs(left + right - whole) <= tol * (1.0 + std::abs(left + right))) {
    return left + right;
  }
  return adaptive_step(f, a, mid, left, tol * 0.5, order, depth - 1) +
         adaptive_step(f, mid, b, right, tol * 0.5, order, depth - 1);
}

}  // namespace

double adaptive_integrate(const std::function<double(double)>& f, double a, double b, double tol,
                          int order, int max_depth) {
  return adaptive_step(f, a, b, gl_integrate(f, a, b, order), tol, order, max_depth);
}

}  // namespace spikegue
