#pragma once

#include <functional>
#include <vector>

namespace spikegue {

// Gauss-Legendre rule on [-1, 1]; nodes ascending. Computed once per order
// by Newton iteration on the Legendre recurrence and cached.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussLegendre& gauss_legendre(int order);

// Fixed-order rule mapped onto [a, b].
double gl_integrate(const std::function<double(double)>& f, double a, double b, int order);

// Adaptive panel subdivision: split while the order-n and half-panel
// estimates disagree beyond tol (relative to the accumulated integral).
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-12, int order = 32, int max_depth = 24);

}  // namespace spikegue
