#pragma once

#include <vector>

namespace spikegue {

// A contour-quadrature result: the (real) kernel value and the difference
// against an independently refined evaluation, as an error estimate.
struct KernelValue {
  double value = 0.0;
  double est_error = 0.0;
};

// Airy kernel in its Cauchy-determinant closed form,
//   K(x, y) = (Ai(x) Ai'(y) - Ai'(x) Ai(y)) / (x - y),
// evaluated at the midpoint as Ai'(m)^2 - m Ai(m)^2 when |x - y| < 1e-6.
double airy_kernel_closed(double x, double y);

// Residue correction common to both contour kernels: for m1 < m2 and x < y,
//   - sum_{l = m1+1}^{m2} e^{(y - x) a_l} / prod_{j in (m1, m2], j != l} (a_l - a_j),
// and zero in every other case.
double airy_single_contour_term(int m1, int m2, const std::vector<double>& a, double x, double y);

// Spike-deformed Airy kernel by double-contour quadrature: the u contour is
// an upward wedge opening right and the v contour one opening left, with all
// spike parameters a_j left of both vertices. Species indices m1, m2 count
// how many spike factors dress each side; m1 = m2 = 0 is the plain Airy
// kernel. Requires distinct a, m1, m2 <= len(a), quad_points >= 16.
KernelValue extended_airy_kernel(int m1, int m2, const std::vector<double>& a, double x, double y,
                                 int quad_points = 48);

// Finite-N spiked GUE minor kernel in scaled edge coordinates x_tilde,
// y_tilde (physical argument 2 sqrt(N) + N^(-1/6) x_tilde). Minor indices
// j1, j2 in [0, k] count removed spiked rows; as N grows this converges to
// extended_airy_kernel(k - j1, k - j2, a, ...). The z contour is a vertical
// line right of a circle through which w winds around 0 and every spike
// location; both are resolved to the oscillation rate of the integrand.
KernelValue scaled_gue_kernel(int N, int k, const std::vector<double>& a, int j1, int j2,
                              double x_tilde, double y_tilde, int quad_points = 48);

}  // namespace spikegue
