#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gkv/periods.hpp"
#include "gkv/rationalize.hpp"

namespace gkv {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool squarefree_odd_part(long m) {
  m = std::abs(m);
  while (m % 2 == 0) m /= 2;
  for (long f = 3; f * f <= m; f += 2)
    if (m % (f * f) == 0) return false;
  return true;
}

bool is_fundamental(long d) {
  if (d == 0) return false;
  long r = ((d % 4) + 4) % 4;
  if (r == 1) return squarefree_odd_part(d) && d % 2 != 0;
  if (r != 0) return false;
  long m = d / 4;
  long rm = ((m % 4) + 4) % 4;
  return (rm == 2 || rm == 3) && squarefree_odd_part(m);
}

double tail_bound(double x, long terms) {
  // Crude but safe: the terms beyond T are dominated by a geometric series
  // with ratio e^{-2 pi / x} times a divisor-function slack.
  return std::exp(-2 * kPi * terms / x) * (std::log(static_cast<double>(terms) + 2) + 2);
}

}  // namespace

double lsum_serial(const std::vector<long>& an, const std::vector<int>& chi,
                   double x, long terms) {
  double sum = 0;
  for (long n = 1; n <= terms; ++n) {
    if (chi[n] == 0 || an[n] == 0) continue;
    sum += static_cast<double>(an[n]) * chi[n] / n * std::exp(-2 * kPi * n / x);
  }
  return 2 * sum;
}

double lsum_parallel(const std::vector<long>& an, const std::vector<int>& chi,
                     double x, long terms) {
  constexpr long kChunks = 64;
  std::array<double, kChunks> partial{};
  long width = (terms + kChunks - 1) / kChunks;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long c = 0; c < kChunks; ++c) {
    long lo = c * width + 1;
    long hi = std::min(terms, (c + 1) * width);
    double s = 0;
    for (long n = lo; n <= hi; ++n) {
      if (chi[n] == 0 || an[n] == 0) continue;
      s += static_cast<double>(an[n]) * chi[n] / n * std::exp(-2 * kPi * n / x);
    }
    partial[c] = s;
  }
  double sum = 0;
  for (long c = 0; c < kChunks; ++c) sum += partial[c];
  return 2 * sum;
}

TwistSpec make_twist(long d, long N) {
  if (!is_fundamental(d))
    throw BadInput("twist wants a fundamental discriminant");
  if (std::gcd(std::abs(d), N) != 1)
    throw NotCoprime("twist discriminant shares a factor with the conductor");
  return TwistSpec{d};
}

long suggested_terms(const CurveQ& E, long d) {
  double x = std::sqrt(static_cast<double>(E.N) * d * d);
  return static_cast<long>(3.2 * x) + 50;
}

double lvalue_center(const CurveQ& E, const std::optional<TwistSpec>& twist,
                     long terms) {
  long d = twist ? twist->d : 1;
  if (std::gcd(std::abs(d), E.N) != 1)
    throw NotCoprime("twist discriminant shares a factor with the conductor");
  double x = std::sqrt(static_cast<double>(E.N) * d * d);
  if (terms < 1 || tail_bound(x, terms) > 1e-8)
    throw TruncationTooSmall("series truncated before the tail dropped below 1e-8");
  ApTable t = ap_table(E, terms);
  std::vector<int> chi(terms + 1, 0);
  for (long n = 1; n <= terms; ++n) chi[n] = kronecker_symbol(d, n);
  // The smoothed series computes (1 + w) sum a_n chi(n)/n e^{-2 pi n/x}, so
  // the sign w of the twisted functional equation has to be folded in.  It
  // is read off independently of the sign formula: the twisted form vanishes
  // at the fixed point of its Fricke involution exactly when w = -1, and
  // that point value is the same sum without the 1/n.
  double fricke = 0;
  for (long n = 1; n <= terms; ++n)
    fricke += static_cast<double>(t.an[n]) * chi[n] * std::exp(-2 * kPi * n / x);
  if (std::abs(fricke) < 1e-3) return 0.0;
  return lsum_parallel(t.an, chi, x, terms);
}

int root_number_twist(int w_E, const TwistSpec& twist, long N) {
  if (w_E != 1 && w_E != -1) throw BadInput("root number must be +-1");
  if (std::gcd(std::abs(twist.d), N) != 1)
    throw NotCoprime("twist discriminant shares a factor with the conductor");
  int sign_d = twist.d > 0 ? 1 : -1;
  return w_E * sign_d * kronecker_symbol(twist.d, N);
}

int root_number_numeric(const CurveQ& E) {
  double L = lvalue_center(E, std::nullopt, suggested_terms(E, 1));
  return std::abs(L) > 1e-6 ? 1 : -1;
}

TwistSpec twist_search(const CurveQ& E, int sign_at_infinity, long budget) {
  if (sign_at_infinity != 1 && sign_at_infinity != -1)
    throw BadInput("sign at infinity must be +-1");
  if (E.is_square_N)
    throw HypothesisViolated("square conductor, twisted sign is blind to d");
  int w = root_number_numeric(E);
  for (long ad = 1; ad <= budget; ++ad) {
    long d = sign_at_infinity * ad;
    if (!is_fundamental(d)) continue;
    if (std::gcd(ad, E.N) != 1) continue;
    TwistSpec t{d};
    if (root_number_twist(w, t, E.N) != 1) continue;
    double L = lvalue_center(E, t, suggested_terms(E, d));
    if (std::abs(L) > 1e-6) return t;
  }
  throw SearchExhausted("no twist with nonvanishing central value in budget");
}

OdaReports oda_bsd_report(const CurveQ& E, const TwistSpec& dplus,
                          const TwistSpec& dminus, long max_den) {
  if (dplus.d <= 0 || dminus.d >= 0)
    throw BadInput("report wants one positive and one negative discriminant");
  double Lp = lvalue_center(E, dplus, suggested_terms(E, dplus.d));
  double Lm = lvalue_center(E, dminus, suggested_terms(E, dminus.d));
  if (std::abs(Lp) < 1e-6 || std::abs(Lm) < 1e-6)
    throw DegenerateTwist("central value vanishes, ratio undefined");
  PeriodPair per = periods_agm(E);
  auto report = [&](double raw) {
    RationalityReport r;
    r.raw = ComplexVal(raw, 0);
    r.max_denominator = max_den;
    r.detected = rationalize(raw, max_den, 1e-6);
    r.residual = r.detected ? std::abs(raw - r.detected->to_double()) : 0.0;
    return r;
  };
  OdaReports out;
  out.bsd = report(Lp / (std::sqrt(static_cast<double>(dplus.d)) * per.omega1));
  out.oda = report(Lp / std::sqrt(static_cast<double>(dplus.d)) *
                   std::sqrt(static_cast<double>(-dminus.d)) / Lm *
                   (per.omega2_im / per.omega1));
  return out;
}

}  // namespace gkv
