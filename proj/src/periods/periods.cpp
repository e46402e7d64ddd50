#include <algorithm>
#include <cmath>
#include <functional>

#include "gkv/periods.hpp"

namespace gkv {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double agm(double a, double b, double eps) {
  eps = std::max(eps, 1e-15);
  for (int i = 0; i < 80; ++i) {
    double an = 0.5 * (a + b);
    double bn = std::sqrt(a * b);
    a = an;
    b = bn;
    if (std::abs(a - b) <= eps * std::abs(a)) return a;
  }
  throw NumericFailure("agm failed to converge");
}

struct CubicRoots {
  bool three_real;
  double e1, e2, e3;     // descending when all real
  double re, im;         // complex pair when not (im > 0)
};

// Roots of x^3 + px^2 + qx + r, polished by Newton so later square roots see
// full double accuracy.
CubicRoots cubic_roots(double p, double q, double r) {
  auto f = [&](double x) { return ((x + p) * x + q) * x + r; };
  auto fp = [&](double x) { return (3 * x + 2 * p) * x + q; };
  auto polish = [&](double x) {
    for (int i = 0; i < 4; ++i) {
      double d = fp(x);
      if (d == 0) break;
      x -= f(x) / d;
    }
    return x;
  };
  // Depressed cubic t^3 + P t + Q with x = t - p/3.
  double P = q - p * p / 3;
  double Q = 2 * p * p * p / 27 - p * q / 3 + r;
  double shift = -p / 3;
  double disc = -4 * P * P * P - 27 * Q * Q;
  CubicRoots out{};
  if (disc > 0) {
    double m = 2 * std::sqrt(-P / 3);
    double theta = std::acos(std::clamp(3 * Q / (P * m), -1.0, 1.0)) / 3;
    double t0 = m * std::cos(theta);
    double t1 = m * std::cos(theta - 2 * kPi / 3);
    double t2 = m * std::cos(theta - 4 * kPi / 3);
    double e[3] = {polish(t0 + shift), polish(t1 + shift), polish(t2 + shift)};
    std::sort(e, e + 3, std::greater<>());
    out.three_real = true;
    out.e1 = e[0];
    out.e2 = e[1];
    out.e3 = e[2];
  } else {
    double s = std::sqrt(Q * Q / 4 + P * P * P / 27);
    double u = std::cbrt(-Q / 2 + s);
    double v = std::cbrt(-Q / 2 - s);
    out.three_real = false;
    out.e1 = polish(u + v + shift);
    // Remaining quadratic factor x^2 + (p + e1) x - r/e1; its roots are the
    // conjugate pair.  Using the product avoids cancellation when e1 is big.
    double sum = -(p + out.e1);
    double prod = out.e1 != 0 ? -r / out.e1 : q + out.e1 * sum;
    out.re = sum / 2;
    double im2 = prod - out.re * out.re;
    if (im2 <= 0) throw NumericFailure("complex root pair collapsed");
    out.im = std::sqrt(im2);
  }
  return out;
}

// Eisenstein series E2 at the nome q = e^{2 pi i tau}, via the Lambert form
// 1 - 24 sum d q^d / (1 - q^d).
ComplexVal eisenstein_e2(ComplexVal q, double eps) {
  double aq = std::abs(q);
  if (aq > 0.9) throw NumericFailure("period lattice too degenerate for E2");
  ComplexVal sum = 0.0;
  ComplexVal qd = 1.0;
  for (int d = 1; d < 4000; ++d) {
    qd *= q;
    sum += static_cast<double>(d) * qd / (1.0 - qd);
    if (std::pow(aq, d) * d < eps) break;
  }
  return 1.0 - 24.0 * sum;
}

// Quasi-period of the first basis vector of (w1, w2), Im(w2/w1) > 0, in the
// sign convention where w1 eta(w2) - w2 eta(w1) = +2 pi i.
ComplexVal quasi_period(ComplexVal w1, ComplexVal w2, double eps) {
  ComplexVal tau = w2 / w1;
  ComplexVal q = std::exp(ComplexVal(0, 2 * kPi) * tau);
  return -(kPi * kPi / 3.0) * eisenstein_e2(q, eps) / w1;
}

}  // namespace

PeriodPair periods_agm(const CurveQ& E, int precision_bits) {
  if (precision_bits < 8 || precision_bits > 52)
    throw BadInput("precision_bits out of the double range");
  double eps = std::ldexp(1.0, -precision_bits - 4);
  // Roots of the quartic-free cubic g(x)/4 = x^3 + (b2/4) x^2 + (b4/2) x + b6/4.
  CubicRoots roots = cubic_roots(E.b2 / 4.0, E.b4 / 2.0, E.b6 / 4.0);
  double omega1, yim;
  ComplexVal w2;
  if (roots.three_real) {
    double s13 = std::sqrt(roots.e1 - roots.e3);
    double s12 = std::sqrt(roots.e1 - roots.e2);
    double s23 = std::sqrt(roots.e2 - roots.e3);
    omega1 = kPi / agm(s13, s12, eps);
    yim = kPi / agm(s13, s23, eps);
    w2 = ComplexVal(0, yim);
  } else {
    double c = roots.e1 - roots.re;
    double a = std::hypot(c, roots.im);
    omega1 = kPi / agm(std::sqrt(a), std::sqrt((a + c) / 2), eps);
    yim = kPi / agm(std::sqrt(a), std::sqrt((a - c) / 2), eps);
    w2 = ComplexVal(omega1 / 2, yim / 2);
  }
  ComplexVal w1(omega1, 0);
  ComplexVal eta1c = quasi_period(w1, w2, eps);
  // Second frame (w2, -w1) computes eta(w2) independently of eta(w1).
  ComplexVal eta2c = quasi_period(w2, -w1, eps);
  PeriodPair out{};
  out.omega1 = omega1;
  out.omega2_im = roots.three_real ? yim : yim / 2;
  out.eta1 = eta1c.real();
  if (std::abs(eta1c.imag()) > 1e-9)
    throw NumericFailure("first quasi-period is not real");
  // Shear (w1, w2) -> (w1, w2 - w1/2) for the complex-root shape; eta shifts
  // the same way and lands on the imaginary axis.
  ComplexVal eta2_sheared = roots.three_real ? eta2c : eta2c - eta1c * 0.5;
  out.eta2_im = eta2_sheared.imag();
  if (std::abs(eta2_sheared.real()) > 1e-9)
    throw NumericFailure("second quasi-period has a real part left over");
  ComplexVal legendre = w1 * ComplexVal(0, out.eta2_im) -
                        ComplexVal(0, out.omega2_im) * out.eta1 -
                        ComplexVal(0, 2 * kPi);
  out.legendre_residual = std::abs(legendre);
  if (out.legendre_residual > std::ldexp(1.0, -precision_bits / 2))
    throw NumericFailure("Legendre relation missed its tolerance");
  return out;
}

}  // namespace gkv
