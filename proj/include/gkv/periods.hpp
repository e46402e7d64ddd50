#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gkv/errors.hpp"
#include "gkv/rational.hpp"

namespace gkv {

// Rational elliptic curves as a numerical testbed: Hecke eigenvalues by point
// counting, real and imaginary periods by AGM, quadratic-twist central
// L-values by the smoothed Dirichlet series, and the rationality reports that
// compare the two.  Everything runs in doubles with explicit tail bounds; the
// exact layer only enters at the very end, through continued-fraction
// detection of the rational ratios.

using ComplexVal = std::complex<double>;

// Integral Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
// together with its conductor.  The standard b-, c- and discriminant
// invariants are computed on construction; a singular model throws BadModel.
// The conductor is caller-supplied (minimal models of a few classical curves
// are known to parse(), everything else must say its level), and square
// conductors are flagged because sign computations assume an odd functional
// equation is reachable by twisting.
struct CurveQ {
  long a1, a2, a3, a4, a6;
  long N;
  long long b2, b4, b6, b8, c4, c6, disc;
  bool is_square_N;

  CurveQ(long a1, long a2, long a3, long a4, long a6, long N);

  // Reads "a1,a2,a3,a4,a6".  With N = 0 the built-in conductor table is
  // consulted; unknown coefficients then throw BadModel.
  static CurveQ parse(const std::string& csv, long N = 0);
};

// Hecke data up to a bound: a_p for every prime p <= bound and the full a_n
// table filled in by multiplicativity and the p-power recursion.
struct ApTable {
  std::map<long, long> ap;
  std::vector<long> an;  // index 0 unused, an[1] = 1
};

// a_p at a single prime, good or bad.  Counts points on the reduction, so
// multiplicative primes land on +-1 and additive primes on 0 without case
// split; for p >= 5 with p || N the result is cross-checked against the
// split/nonsplit criterion (-c6 a square mod p).
long curve_ap(const CurveQ& E, long p);

// Point-count character sum at an odd prime, serial and chunked-parallel
// versions.  Both return the same value; the parallel one accumulates fixed
// chunks in index order so results do not depend on the thread count.
long ap_scan_serial(const CurveQ& E, long p);
long ap_scan_parallel(const CurveQ& E, long p);

// Fills the table up to bound (at most 10^6, else BadInput).
ApTable ap_table(const CurveQ& E, long bound);

// Smoothed central-value sum 2 sum_{n<=terms} an[n] chi[n]/n e^{-2 pi n/x},
// serial and chunked-parallel versions.  The parallel version accumulates a
// fixed number of chunks in index order, so its value is independent of the
// thread count (though not bit-identical to the serial order).
double lsum_serial(const std::vector<long>& an, const std::vector<int>& chi,
                   double x, long terms);
double lsum_parallel(const std::vector<long>& an, const std::vector<int>& chi,
                     double x, long terms);

// Period lattice data of the real curve, normalized to a real first period
// and a purely imaginary second one: Omega_1 = omega1 > 0, Omega_2 =
// i*omega2_im with omega2_im > 0, and likewise eta_2 = i*eta2_im.  For
// negative discriminant the natural basis (w1, (w1 + iY)/2) is sheared to
// (w1, iY/2), which changes nothing rational.  Quasi-periods carry the sign
// that makes Omega_1 eta_2 - Omega_2 eta_1 = 2 pi i exactly; the stored
// residual is the numerical defect of that relation, with eta_1 and eta_2
// computed independently in the two frames so the identity is a real check.
struct PeriodPair {
  double omega1;
  double omega2_im;
  double eta1;
  double eta2_im;
  double legendre_residual;
};

// AGM periods plus Eisenstein quasi-periods.  Throws NumericFailure when the
// Legendre residual exceeds 2^{-precision_bits/2} or the nome leaves the
// region where the q-series converge.
PeriodPair periods_agm(const CurveQ& E, int precision_bits = 50);

// Validated quadratic twist: d a fundamental discriminant (1 is allowed and
// means no twist) coprime to the conductor it will be used with.
struct TwistSpec {
  long d;
};

// Checks the fundamental-discriminant shape (throws BadInput) and coprimality
// with N (throws NotCoprime).
TwistSpec make_twist(long d, long N);

// Kronecker symbol (a/n) for n > 0.
int kronecker_symbol(long a, long n);

// Central L-value of the twist by d.  Computes the smoothed series
// 2 sum a_n chi_d(n)/n exp(-2 pi n / sqrt(N d^2)), which equals L(1) when
// the twisted functional-equation sign is +1.  The sign is detected
// numerically (the twisted form vanishes at its Fricke fixed point exactly
// when it is -1), and for sign -1 the value returned is 0.  Throws
// TruncationTooSmall when terms cannot push the tail below 1e-8.
double lvalue_center(const CurveQ& E, const std::optional<TwistSpec>& twist,
                     long terms);

// Term count that makes the lvalue_center tail comfortably below 1e-8.
long suggested_terms(const CurveQ& E, long d);

// Sign of the twisted functional equation: w_E * sign(d) * (d/N).  Throws
// NotCoprime when d shares a factor with N.
int root_number_twist(int w_E, const TwistSpec& twist, long N);

// Root number of E itself, read off numerically from the magnitude of the
// untwisted central value.  Valid for the rank 0 and 1 curves this module
// is pointed at.
int root_number_numeric(const CurveQ& E);

// Smallest |d| <= budget with sign(d) = sign_at_infinity, d fundamental and
// coprime to N, predicted sign +1 and a demonstrably nonvanishing central
// value.  Square conductor throws HypothesisViolated (the sign formula would
// be blind to the twist), exhaustion throws SearchExhausted.
TwistSpec twist_search(const CurveQ& E, int sign_at_infinity, long budget);

// One rationality experiment: the raw floating-point ratio, the detected
// rational if continued fractions find one within tolerance, and the
// residual |raw - detected|.
struct RationalityReport {
  ComplexVal raw;
  std::optional<Rational> detected;
  double residual;
  long max_denominator;
};

// The two period-rationality reports for a pair of twists d+ > 0, d- < 0:
// bsd is L(1, E^{d+}) / (sqrt(d+) Omega_1), and oda is
// [L(1, E^{d+})/sqrt(d+)] * [sqrt(|d-|)/L(1, E^{d-})] * (omega2_im/omega1),
// both real and both expected to land on small rationals.  A twist whose
// central value vanishes to working precision throws DegenerateTwist.
struct OdaReports {
  RationalityReport bsd;
  RationalityReport oda;
};

OdaReports oda_bsd_report(const CurveQ& E, const TwistSpec& dplus,
                          const TwistSpec& dminus, long max_den = 1000);

// Determinant of the 3x3 block expressing conjugation by the period matrix
// g = [[w1, l1 w1], [w2, l2 w2]] on trace-zero 2x2 matrices in the basis
// (diag(1,-1), upper, lower).  Conjugation has determinant 1 exactly.
ComplexVal delta2_block_det(ComplexVal w1, ComplexVal w2, ComplexVal l1,
                            ComplexVal l2);

// Determinant of the complex-place comparison block assembled from tau and
// the eigenvalue pair (l1, l2); equals
// -i Im(tau)^2 / (|tau|^2 (l2 - l1)(conj l2 - conj l1)).
ComplexVal gamma2_block_det(ComplexVal tau, ComplexVal l1, ComplexVal l2);

// Randomized check of the archimedean comparison identities: 9x9
// block-diagonal conjugation determinant equal to 1, the complex-place 3x3
// determinant above, both to 1e-10 over the requested number of samples, and
// the three conjugation identities for delta_{nu,t} verified symbolically
// over the rational function field in (t, tau, taubar).
bool appendixA_check(int samples, unsigned seed);

// Just the symbolic part of appendixA_check: the three delta_{nu,t}
// conjugation identities over the rational function field.
bool appendix_conjugation_check();

}  // namespace gkv
