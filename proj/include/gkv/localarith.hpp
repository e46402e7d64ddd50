#pragma once

#include <complex>
#include <optional>
#include <random>
#include <vector>

#include "gkv/errors.hpp"

namespace gkv {

// Non-archimedean arithmetic over Q_p in double precision: multiplicative
// characters of finite conductor, Gauss sums against the standard additive
// character psi(a) = e^{-2 pi i [a]_p}, local zeta and L factors, Kirillov
// newvectors, and the twisted newvector integral they satisfy.  Everything
// here is a root of unity or a convergent geometric series, so doubles with
// 1e-9 tolerances are enough; nothing needs the exact field tower.

using ComplexVal = std::complex<double>;

// Character of Q_p^x determined by its value on p and by the images of fixed
// generators of the units mod p^cond_exp: one generator (a primitive root)
// for odd p, the pair (-1, 5) for p = 2 with cond_exp >= 3.  cond_exp is
// required to be minimal, so the stored data is always primitive.
class LocalChar {
 public:
  // Unramified character: trivial on units, free value on p.
  LocalChar(long p, ComplexVal value_on_p);

  // Ramified character from the generator images.  Throws BadInput when an
  // image is not a root of unity of admissible order or when the character
  // factors through a smaller conductor.
  LocalChar(long p, int cond_exp, std::vector<ComplexVal> unit_values,
            ComplexVal value_on_p);

  static LocalChar trivial(long p);
  // Legendre symbol mod an odd prime, conductor p, value 1 on p.
  static LocalChar quadratic(long p);
  // Odd p: the character sending the fixed primitive root to
  // e^{2 pi i a / phi(p^n)}.
  static LocalChar from_index(long p, int n, long a,
                              ComplexVal value_on_p = ComplexVal(1.0, 0.0));

  long p() const { return p_; }
  int cond_exp() const { return cond_exp_; }
  // p^max(cond_exp, 1), the modulus the unit part factors through.
  long modulus() const { return modulus_; }
  ComplexVal value_on_p() const { return value_on_p_; }
  const std::vector<ComplexVal>& unit_values() const { return unit_values_; }
  bool unramified() const { return cond_exp_ == 0; }

  // Value on a unit residue; any integer representative works.  Throws
  // BadInput when the argument is divisible by p.
  ComplexVal on_unit(long u) const;
  ComplexVal at_minus_one() const { return on_unit(modulus_ - 1); }
  LocalChar inverse() const;

 private:
  LocalChar() = default;
  void build_table();
  void check_primitive() const;

  long p_ = 0;
  int cond_exp_ = 0;
  long modulus_ = 1;
  ComplexVal value_on_p_{1.0, 0.0};
  std::vector<ComplexVal> unit_values_;
  std::vector<ComplexVal> table_;
};

// Uniformly random primitive character mod p^n, trivial on p.
LocalChar random_primitive_char(long p, int n, std::mt19937& rng);

// e^{-2 pi i [p^v u]_p}: the depth -v additive character on the unit u.
ComplexVal psi_depth(long p, int v, long u);

// Average of chi(u) psi_depth(p, v, u) over the unit shell, taken mod
// p^max(cond, -v, 1) so both factors are constant on the residues summed.
// For the trivial character this is 1 at v >= 0, 1/(1-p) at v = -1 and 0
// deeper; for chi of conductor p^n it vanishes unless v = -n.
ComplexVal shell_average(const LocalChar& chi, int v);

// Gauss sum g(chi, y) at y = p^{y_exp}: the unit average of
// chi^{-1}(u) psi(y u).  The normalization d^{-1} = y c(chi) pins
// y_exp = -cond_exp; any other shift changes the value by a constant and can
// make it vanish, so it throws BadConductorShift unless allow_shift is set,
// in which case the integral is computed as written.  Unramified characters
// give exactly 1 at the pinned shift.
ComplexVal gauss_sum(const LocalChar& chi, int y_exp, bool allow_shift = false);

enum class ZetaKind { finite, real_place, complex_place };

// Local zeta factor: (1-q^{-s})^{-1}, pi^{-s/2} Gamma(s/2), or
// 2 (2 pi)^{-s} Gamma(s).  The finite kind takes the residue size q.
ComplexVal zeta_local(ZetaKind kind, double s, long q = 0);

enum class NewvectorKind { spherical, steinberg, supercuspidal_like };

// Local data of the representation at p: alpha is the Satake value xi(p)
// for the spherical and Steinberg kinds and is ignored otherwise.
struct SatakeData {
  NewvectorKind kind = NewvectorKind::spherical;
  long p = 0;
  ComplexVal alpha{1.0, 0.0};
};

// Kirillov-model newvector evaluated on any y of the given valuation:
// spherical |y|^{1/2} sum_{k+l=v} alpha^{k-l}, Steinberg
// |y|^{1/2} alpha^v on integers, unit indicator otherwise.
ComplexVal kirillov_newvector(const SatakeData& data, int y_valuation);

// Twisted local L factor at s.  A ramified twist gives 1, as does the
// supercuspidal-like kind; otherwise the usual Euler factor in
// rho(p) alpha^{+-1} p^{-s}.  Throws PoleAtS at a zero of a factor.
ComplexVal local_L(const SatakeData& data,
                   const std::optional<LocalChar>& twist, double s);

// Truncated newvector integral sum_{n < T} rho(p)^n phi0(p^n) I_n with
// I_n the unit average of rho against the shifted additive character.  The
// result must reproduce g(rho^{-1}, y) L(1/2) within the geometric tail
// bound p^{-T/2}/(1-p^{-1/2}); a larger discrepancy throws
// TruncationTooSmall.  Returns the truncated sum.
ComplexVal twisted_local_integral(const SatakeData& data, const LocalChar& rho,
                                  int truncation);

// Archimedean constants of the period identities, assembled from the weight
// vector.  Entries of k are ordered with the r1_in_B real places first, then
// the r1_outside_B remaining real places, then two entries per complex
// place.  Requires |2 m_nu| <= k_nu - 2.
struct CKConstants {
  ComplexVal C;
  ComplexVal K;
};

CKConstants constants_CK(const std::vector<long>& k, const std::vector<long>& m,
                         int r1_in_B, int r2, int r1_outside_B);

}  // namespace gkv
