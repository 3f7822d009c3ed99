#include "spikegue/airy.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "spikegue/errors.hpp"

namespace spikegue {

namespace {

// Double-double arithmetic: an unevaluated sum hi + lo carrying ~32
// significant digits. Only the handful of operations the series needs.
struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

DD two_sum(double a, double b) {
  const double s = a + b;
  const double bp = s - a;
  return {s, (a - (s - bp)) + (b - bp)};
}

DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

DD dd_add(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  return two_sum(s.hi, s.lo + a.lo + b.lo);
}

DD dd_mul(DD a, double b) {
  DD p = two_prod(a.hi, b);
  return two_sum(p.hi, std::fma(a.lo, b, p.lo));
}

DD dd_mul(DD a, DD b) {
  DD p = two_prod(a.hi, b.hi);
  return two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

DD dd_div(DD a, double b) {
  const double q1 = a.hi / b;
  DD r = two_prod(q1, b);
  const double q2 = ((a.hi - r.hi) - r.lo + a.lo) / b;
  return two_sum(q1, q2);
}

// Ai(0) = 3^(-2/3) / Gamma(2/3) and -Ai'(0) = 3^(-1/3) / Gamma(1/3), split
// to double-double: near |x| = 8 the sums f, g reach ~1e6 while Ai is ~5e-8,
// so even the rounding of these constants would cost ten digits.
constexpr DD kAi0{0.35502805388781722, 2.0523363243621199e-17};
constexpr DD kAip0{0.25881940379280682, -2.5222431116108321e-17};

// Maclaurin solution basis: f = sum a_k x^{3k}, g = sum b_k x^{3k+1} with
// a_k = a_{k-1} / ((3k-1) 3k), b_k = b_{k-1} / (3k (3k+1)). The terms peak
// near 2e5 at |x| = 8 while Ai itself is ~5e-8 there, so the sums cancel
// fourteen digits and need the double-double accumulators.
AiryPair airy_series(double x) {
  const DD x3 = dd_mul(two_prod(x, x), x);

  DD tf{1.0, 0.0};  // a_k x^{3k}
  DD tg{x, 0.0};    // b_k x^{3k+1}
  DD f = tf, g = tg;
  DD fp{0.0, 0.0};  // sum 3k a_k x^{3k-1}
  DD gp{1.0, 0.0};  // sum (3k+1) b_k x^{3k}

  for (int k = 1; k <= 200; ++k) {
    tf = dd_div(dd_mul(tf, x3), (3.0 * k - 1.0) * (3.0 * k));
    tg = dd_div(dd_mul(tg, x3), (3.0 * k) * (3.0 * k + 1.0));
    f = dd_add(f, tf);
    g = dd_add(g, tg);
    if (x != 0.0) {
      fp = dd_add(fp, dd_mul(dd_div(tf, x), 3.0 * k));
      gp = dd_add(gp, dd_mul(dd_div(tg, x), 3.0 * k + 1.0));
    }
    if (std::abs(tf.hi) < 1e-35 * std::abs(f.hi) && std::abs(tg.hi) < 1e-35 * std::abs(g.hi)) {
      break;
    }
  }

  auto combine = [](DD a, DD b) {
    DD bneg{-b.hi, -b.lo};
    DD s = dd_add(dd_mul(kAi0, a), dd_mul(kAip0, bneg));
    return s.hi + s.lo;
  };
  return {combine(f, g), combine(fp, gp)};
}

// Poincare coefficients u_k (and v_k = u_k (6k+1)/(1-6k)) for zeta = (2/3)|x|^{3/2}.
// The minimum term sits near k = 2 zeta, giving ~1e-13 relative floor at
// |x| = 8 and far better beyond; truncate at the smallest term.
double asymptotic_sum(double zeta, int parity, int residue, bool v_coeffs) {
  // sum_m (-1)^m c_{parity m + residue} zeta^{-(parity m + residue)} with
  // c = u or v: the stride-1 sum for the monotone branch, the even/odd
  // stride-2 sums for the oscillatory one.
  double u = 1.0;
  double sum = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 80; ++k) {
    const double c = v_coeffs ? u * (6.0 * k + 1.0) / (1.0 - 6.0 * k) : u;
    if (k % parity == residue) {
      const int m = (k - residue) / parity;
      const double term = (m % 2 == 0 ? 1.0 : -1.0) * c * std::pow(zeta, -k);
      if (std::abs(term) >= prev) break;  // divergent side of the asymptotic
      sum += term;
      prev = std::abs(term);
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    u *= (6.0 * k + 5.0) * (6.0 * k + 1.0) / (72.0 * (k + 1.0));
  }
  return sum;
}

AiryPair airy_asymptotic_positive(double x) {
  const double zeta = (2.0 / 3.0) * std::pow(x, 1.5);
  const double root4 = std::pow(x, 0.25);
  const double envelope = std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi));
  AiryPair out;
  out.ai = envelope / root4 * asymptotic_sum(zeta, 1, 0, false);
  out.aip = -envelope * root4 * asymptotic_sum(zeta, 1, 0, true);
  return out;
}

AiryPair airy_asymptotic_negative(double x) {
  const double z = -x;
  const double zeta = (2.0 / 3.0) * std::pow(z, 1.5);
  const double root4 = std::pow(z, 0.25);
  const double c = std::cos(zeta - std::numbers::pi / 4.0);
  const double s = std::sin(zeta - std::numbers::pi / 4.0);
  const double even_u = asymptotic_sum(zeta, 2, 0, false);
  const double odd_u = asymptotic_sum(zeta, 2, 1, false);
  const double even_v = asymptotic_sum(zeta, 2, 0, true);
  const double odd_v = asymptotic_sum(zeta, 2, 1, true);
  AiryPair out;
  out.ai = (c * even_u + s * odd_u) / (std::sqrt(std::numbers::pi) * root4);
  out.aip = root4 / std::sqrt(std::numbers::pi) * (s * even_v - c * odd_v);
  return out;
}

}  // namespace

AiryPair airy(double x) {
  if (!(std::abs(x) <= 40.0)) {
    throw config_error("airy: argument outside the supported range |x| <= 40");
  }
  if (x == 0.0) return {kAi0.hi, -kAip0.hi};
  if (std::abs(x) <= 8.0) return airy_series(x);
  return x > 0.0 ? airy_asymptotic_positive(x) : airy_asymptotic_negative(x);
}

double airy_ai(double x) { return airy(x).ai; }
double airy_ai_prime(double x) { return airy(x).aip; }

}  // namespace spikegue
