#pragma once

#include <vector>

#include "gkv/matrixnf.hpp"
#include "gkv/numberfield.hpp"

namespace gkv {

// 2x2 matrix over a number field, the group side of the finite-dimensional
// actions.  Entries (a b; c d).
struct Mat2 {
  NFElem a, b, c, d;

  static Mat2 identity(const FieldPtr& F);
  static Mat2 diag(const NFElem& x, const NFElem& y);
  NFElem det() const { return a * d - b * c; }
  NFElem trace() const { return a + d; }
  Mat2 inverse() const;  // SingularMatrix on det = 0
  Mat2 operator*(const Mat2& o) const;
  Mat2 operator-() const { return {-a, -b, -c, -d}; }
  Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  Mat2 scaled(const NFElem& s) const { return {a * s, b * s, c * s, d * s}; }
  Mat2 conj_by(const Mat2& g) const;  // g * this * g^{-1}
  friend bool operator==(const Mat2& x, const Mat2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

// The square root of -1 inside F: the generator of Q(i), the square of the
// generator of Q(z8).  MissingRoot for fields without one.
NFElem imag_unit(const FieldPtr& F);
// sqrt(2) = z8 + z8^{-1}; only available in the eighth cyclotomic field.
NFElem sqrt2(const FieldPtr& F);

// Standard trace-zero generators used throughout the archimedean modules.
Mat2 gen_Hhat(const FieldPtr& F);    // (1,0;0,-1)
Mat2 gen_W(const FieldPtr& F);       // (0,1;-1,0)
Mat2 gen_Wtilde(const FieldPtr& F);  // (0,1;1,0)
Mat2 gen_Hc(const FieldPtr& F);      // (0,-i;i,0)

// Homogeneous polynomial of degree k in (X, Y); coeffs[j] multiplies X^j Y^(k-j).
class PkPoly {
 public:
  PkPoly() : k_(-1) {}
  PkPoly(FieldPtr F, int k)
      : F_(std::move(F)), k_(k), c_(k + 1, NFElem(F_)) {}
  static PkPoly monomial(const FieldPtr& F, int k, int xdeg,
                         const NFElem& coeff);

  const FieldPtr& field() const { return F_; }
  int weight() const { return k_; }
  const NFElem& coeff(int xdeg) const { return c_[xdeg]; }
  NFElem& coeff(int xdeg) { return c_[xdeg]; }
  const std::vector<NFElem>& coeffs() const { return c_; }
  bool is_zero() const;

  PkPoly operator-() const;
  PkPoly& operator+=(const PkPoly& o);
  PkPoly& operator-=(const PkPoly& o);
  PkPoly& operator*=(const NFElem& s);
  friend PkPoly operator+(PkPoly a, const PkPoly& b) { return a += b; }
  friend PkPoly operator-(PkPoly a, const PkPoly& b) { return a -= b; }
  friend PkPoly operator*(PkPoly a, const NFElem& s) { return a *= s; }
  friend PkPoly operator*(const NFElem& s, PkPoly a) { return a *= s; }
  friend bool operator==(const PkPoly& a, const PkPoly& b);
  friend bool operator!=(const PkPoly& a, const PkPoly& b) { return !(a == b); }

  PkPoly dx() const;  // d/dX, weight k-1
  PkPoly dy() const;  // d/dY

  friend PkPoly mul(const PkPoly& a, const PkPoly& b);  // weight adds

 private:
  FieldPtr F_;
  int k_;
  std::vector<NFElem> c_;
};

// (ad-bc)^{-k/2} P(aX+cY, bX+dY).  Even weight only.
PkPoly act_gl2(const Mat2& g, const PkPoly& P);

// First-order action of a trace-zero matrix: the derivative at t=0 of
// act_gl2(exp(tX)).  For X=(p,q;r,-p) this sends X^aY^b to
// (a-b)p X^aY^b + a r X^(a-1)Y^(b+1) + b q X^(a+1)Y^(b-1).
PkPoly lie_act_findim(const Mat2& X, const PkPoly& P);

// Classical transvectant: the SL2-equivariant projection
// P(m) x P(n) -> P(m+n-2r).
PkPoly transvectant(const PkPoly& f, const PkPoly& g, int r);

// The equivariant identification of trace-zero 2x2 matrices (adjoint action)
// with binary quadratics: (p,q;r,-p) -> q X^2 - 2p XY - r Y^2.
PkPoly quadratic_of_matrix(const Mat2& X, int check_trace = 1);

}  // namespace gkv
