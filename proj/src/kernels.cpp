#include "spikegue/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>

#include "spikegue/airy.hpp"
#include "spikegue/errors.hpp"
#include "spikegue/quadrature.hpp"

namespace spikegue {

namespace {

using cd = std::complex<double>;

constexpr double kPi = std::numbers::pi;

// Truncating a contour where the exponent has fallen 45 below its vertex
// value discards ~e^-45 of relative mass, far under the quadrature target.
constexpr double kTruncationDrop = 45.0;

// A factor with real exponent beyond 690 would overflow double on its own.
constexpr double kExponentCap = 690.0;

struct Node {
  cd point;
  cd weight;
};

void check_quad_points(int quad_points) {
  if (quad_points < 16) throw config_error("kernel quadrature: quad_points must be at least 16");
}

void check_distinct(const std::vector<double>& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (a[i] == a[j]) throw config_error("kernel: spike parameters must be distinct");
    }
  }
}

// March outward in doubling steps until the integrand has decayed by the
// truncation drop relative to the vertex.
double march_truncation(const std::function<double(double)>& re_exponent) {
  const double base = re_exponent(0.0);
  for (double T = 1.0; T <= 64.0; T *= 2.0) {
    if (re_exponent(T) <= base - kTruncationDrop) return T;
  }
  throw quadrature_error("contour truncation: no decay along the leg within range");
}

// Nodes for an upward-oriented wedge: two legs leaving `vertex` at +-angle,
// geometric panels [0,1],[1,2],[2,4],...,T plus an optional extension panel.
std::vector<Node> wedge_nodes(cd vertex, double angle, double T, double extra, int pts) {
  std::vector<double> bounds{0.0, 1.0};
  while (bounds.back() < T) bounds.push_back(std::min(2.0 * bounds.back(), T));
  if (extra > 0.0) bounds.push_back(bounds.back() + extra);

  const cd up = std::polar(1.0, angle);
  const cd down = std::polar(1.0, -angle);
  const GaussLegendre& gl = gauss_legendre(pts);
  std::vector<Node> nodes;
  nodes.reserve(2 * pts * (bounds.size() - 1));
  for (std::size_t p = 0; p + 1 < bounds.size(); ++p) {
    const double mid = 0.5 * (bounds[p] + bounds[p + 1]);
    const double half = 0.5 * (bounds[p + 1] - bounds[p]);
    for (int i = 0; i < pts; ++i) {
      const double t = mid + half * gl.nodes[i];
      const double wt = half * gl.weights[i];
      nodes.push_back({vertex + t * up, wt * up});
      nodes.push_back({vertex + t * down, -wt * down});
    }
  }
  return nodes;
}

// exp(E(node)) * weight for every node, guarding against factor overflow.
std::vector<cd> weighted_factors(const std::vector<Node>& nodes,
                                 const std::function<cd(cd)>& exponent) {
  std::vector<cd> out(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const cd e = exponent(nodes[i].point);
    if (e.real() > kExponentCap) {
      throw quadrature_error("contour quadrature: exponent exceeds the overflow cap");
    }
    out[i] = std::exp(e) * nodes[i].weight;
  }
  return out;
}

// sum_{p,q} A_p B_q / (z_p - w_q), the shared double-contour core.
cd pair_sum(const std::vector<Node>& zn, const std::vector<cd>& az, const std::vector<Node>& wn,
            const std::vector<cd>& bw) {
  cd sum = 0.0;
  for (std::size_t p = 0; p < zn.size(); ++p) {
    cd inner = 0.0;
    for (std::size_t q = 0; q < wn.size(); ++q) {
      inner += bw[q] / (zn[p].point - wn[q].point);
    }
    sum += az[p] * inner;
  }
  return sum;
}

// Evaluate at a base resolution and once refined (1.5x the points, contours
// extended by 6); their difference is the reported error estimate. One more
// refinement is attempted before giving up.
KernelValue refine(const std::function<cd(double, double)>& eval, int quad_points) {
  auto acceptable = [](double est, cd value) {
    return est <= std::max(1e-10, 1e-9 * std::abs(value));
  };
  cd v1 = eval(1.0 * quad_points, 0.0);
  cd v2 = eval(1.5 * quad_points, 6.0);
  double est = std::abs(v1 - v2);
  if (acceptable(est, v2)) return {v2.real(), est};
  cd v3 = eval(2.25 * quad_points, 12.0);
  est = std::abs(v3 - v2);
  if (acceptable(est, v3)) return {v3.real(), est};
  throw quadrature_error("contour quadrature: refinement failed to converge");
}

}  // namespace

double airy_kernel_closed(double x, double y) {
  if (std::abs(x - y) < 1e-6) {
    const double m = 0.5 * (x + y);
    AiryPair p = airy(m);
    return p.aip * p.aip - m * p.ai * p.ai;
  }
  AiryPair px = airy(x);
  AiryPair py = airy(y);
  return (px.ai * py.aip - px.aip * py.ai) / (x - y);
}

double airy_single_contour_term(int m1, int m2, const std::vector<double>& a, double x, double y) {
  if (m1 < 0 || m2 < 0 || static_cast<std::size_t>(std::max(m1, m2)) > a.size()) {
    throw config_error("airy_single_contour_term: species indices out of range");
  }
  check_distinct(a);
  if (m1 >= m2 || x >= y) return 0.0;

  double sum = 0.0;
  for (int l = m1 + 1; l <= m2; ++l) {
    double denom = 1.0;
    for (int j = m1 + 1; j <= m2; ++j) {
      if (j != l) denom *= a[l - 1] - a[j - 1];
    }
    sum += std::exp((y - x) * a[l - 1]) / denom;
  }
  return -sum;
}

KernelValue extended_airy_kernel(int m1, int m2, const std::vector<double>& a, double x, double y,
                                 int quad_points) {
  if (m1 < 0 || m2 < 0 || static_cast<std::size_t>(std::max(m1, m2)) > a.size()) {
    throw config_error("extended_airy_kernel: species indices out of range");
  }
  check_quad_points(quad_points);
  check_distinct(a);

  // Anchors: poles (the first m2 spike parameters) < left wedge < right
  // wedge, the vertices pushed out to ~sqrt(max |x|,|y|) so the exponent
  // already decays at the vertex scale.
  const double m = std::max(1.0, std::sqrt(std::max(std::abs(x), std::abs(y))));
  double g = -m;
  if (m2 > 0) g = std::max(g, *std::max_element(a.begin(), a.begin() + m2) + 1.0);
  const double b = std::max(m, g + 2.0);

  auto ez = [&](cd u) {
    cd e = u * u * u / 3.0 - x * u;
    for (int j = 0; j < m1; ++j) e += std::log(u - a[j]);
    return e;
  };
  auto ew = [&](cd v) {
    cd e = v * v * v / 3.0 - y * v;
    for (int j = 0; j < m2; ++j) e += std::log(v - a[j]);
    return e;
  };

  auto eval = [&](double pts, double extra) {
    const int q = static_cast<int>(std::lround(pts));
    const double Tu = march_truncation(
        [&](double t) { return ez(b + t * std::polar(1.0, kPi / 3.0)).real(); });
    const double Tv = march_truncation(
        [&](double t) { return (-ew(g + t * std::polar(1.0, 2.0 * kPi / 3.0))).real(); });
    std::vector<Node> un = wedge_nodes(b, kPi / 3.0, Tu, extra, q);
    std::vector<Node> vn = wedge_nodes(g, 2.0 * kPi / 3.0, Tv, extra, q);
    std::vector<cd> au = weighted_factors(un, ez);
    std::vector<cd> bv = weighted_factors(vn, [&](cd v) { return -ew(v); });
    // (2 pi i)^2 = -4 pi^2.
    return pair_sum(un, au, vn, bv) / (-4.0 * kPi * kPi);
  };

  KernelValue out = refine(eval, quad_points);
  out.value += airy_single_contour_term(m1, m2, a, x, y);
  return out;
}

KernelValue scaled_gue_kernel(int N, int k, const std::vector<double>& a, int j1, int j2,
                              double x_tilde, double y_tilde, int quad_points) {
  if (N < 2) throw config_error("scaled_gue_kernel: N must be at least 2");
  if (k != static_cast<int>(a.size())) {
    throw config_error("scaled_gue_kernel: k must equal the number of spikes");
  }
  if (j1 < 0 || j1 > k || j2 < 0 || j2 > k) {
    throw config_error("scaled_gue_kernel: minor indices must lie in [0, k]");
  }
  check_quad_points(quad_points);
  check_distinct(a);

  const double root_n = std::sqrt(static_cast<double>(N));
  const double sixth = std::pow(static_cast<double>(N), 1.0 / 6.0);
  const double X = 2.0 * root_n + x_tilde / sixth;
  const double Y = 2.0 * root_n + y_tilde / sixth;
  const double max_a = a.empty() ? 0.0 : *std::max_element(a.begin(), a.end());

  // w circle through 0 and all spikes, z line strictly right of it.
  const double R = a.empty() ? root_n + 1.0 : root_n + std::max(0.0, sixth * max_a + 1.0);
  const double x0 = a.empty() ? root_n + sixth : root_n + sixth * (max_a + 1.0);
  if (!(x0 > R)) {
    throw config_error("scaled_gue_kernel: z line does not clear the w circle");
  }

  std::vector<double> alphas(k);
  for (int i = 0; i < k; ++i) alphas[i] = root_n + sixth * a[k - 1 - i];

  // Edge rescaling: kernel conjugation and the species-dependent N power,
  // folded into the z-side exponent.
  const double prefactor = std::log(static_cast<double>(N)) * (-1.0 / 6.0 + (j1 - j2) / 6.0) +
                           std::cbrt(static_cast<double>(N)) * (x_tilde - y_tilde);

  auto ez = [&](cd z) {
    cd e = z * z / 2.0 - X * z + static_cast<double>(N - k) * std::log(z) + prefactor;
    for (int i = j1; i < k; ++i) e += std::log(z - alphas[i]);
    return e;
  };
  auto ew = [&](cd w) {
    cd e = w * w / 2.0 - Y * w + static_cast<double>(N - k) * std::log(w);
    for (int i = j2; i < k; ++i) e += std::log(w - alphas[i]);
    return e;
  };

  // Oscillation rates fix the resolution: the line needs ~4 points per unit
  // of phase rate, the circle ~6 samples per unit of total phase.
  const double line_rate = std::abs(x0 - X) + static_cast<double>(N) / x0;
  const double circle_phase = R * R + R * std::max(std::abs(X), std::abs(Y)) + N;

  auto eval = [&](double pts, double extra) {
    const double factor = pts / quad_points;
    const int line_pts =
        static_cast<int>(std::lround(std::max(pts, factor * std::ceil(4.0 * line_rate))));
    int M = static_cast<int>(std::lround(factor * std::max(512.0, 6.0 * circle_phase)));
    M += M % 2;
    if (M > 200000) throw quadrature_error("scaled_gue_kernel: circle resolution out of range");

    // Truncate the line by unit-step marching, then build symmetric panels.
    const double base = ez(cd(x0, 0.0)).real();
    double S = 1.0;
    while (ez(cd(x0, S)).real() > base - kTruncationDrop) {
      S += 1.0;
      if (S > 200.0) throw quadrature_error("scaled_gue_kernel: line integrand does not decay");
    }
    S += extra;

    const GaussLegendre& gl = gauss_legendre(line_pts);
    std::vector<Node> zn;
    zn.reserve(2 * static_cast<std::size_t>(S) * line_pts);
    for (double lo = -S; lo < S - 0.5; lo += 1.0) {
      for (int i = 0; i < line_pts; ++i) {
        const double s = lo + 0.5 + 0.5 * gl.nodes[i];
        zn.push_back({cd(x0, s), cd(0.0, 0.5 * gl.weights[i])});
      }
    }
    std::vector<Node> wn;
    wn.reserve(M);
    for (int q = 0; q < M; ++q) {
      const double theta = 2.0 * kPi * (q + 0.5) / M;
      const cd w = std::polar(R, theta);
      wn.push_back({w, cd(0.0, 2.0 * kPi / M) * w});
    }

    std::vector<cd> az = weighted_factors(zn, ez);
    std::vector<cd> bw = weighted_factors(wn, [&](cd w) { return -ew(w); });
    return pair_sum(zn, az, wn, bw) / (-4.0 * kPi * kPi);
  };

  KernelValue out = refine(eval, quad_points);
  out.value += airy_single_contour_term(k - j1, k - j2, a, x_tilde, y_tilde);
  return out;
}

}  // namespace spikegue
