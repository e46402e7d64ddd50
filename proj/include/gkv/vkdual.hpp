#pragma once

#include <vector>

#include "gkv/matrixnf.hpp"
#include "gkv/pkpoly.hpp"

namespace gkv {

// Linear functional on the weight-k polynomials, stored by its values on the
// monomial basis: v[j] = value on X^j Y^(k-j).
class VkDual {
 public:
  VkDual() : k_(-1) {}
  VkDual(FieldPtr F, int k)
      : F_(std::move(F)), k_(k), v_(k + 1, NFElem(F_)) {}

  const FieldPtr& field() const { return F_; }
  int weight() const { return k_; }
  const NFElem& value_on(int xdeg) const { return v_[xdeg]; }
  NFElem& value_on(int xdeg) { return v_[xdeg]; }
  bool is_zero() const;

  NFElem apply(const PkPoly& P) const;

  VkDual operator-() const;
  VkDual& operator+=(const VkDual& o);
  VkDual& operator-=(const VkDual& o);
  VkDual& operator*=(const NFElem& s);
  friend VkDual operator+(VkDual a, const VkDual& b) { return a += b; }
  friend VkDual operator-(VkDual a, const VkDual& b) { return a -= b; }
  friend VkDual operator*(VkDual a, const NFElem& s) { return a *= s; }
  friend VkDual operator*(const NFElem& s, VkDual a) { return a *= s; }
  friend bool operator==(const VkDual& a, const VkDual& b);
  friend bool operator!=(const VkDual& a, const VkDual& b) { return !(a == b); }

 private:
  FieldPtr F_;
  int k_;
  std::vector<NFElem> v_;
};

// Contragredient action: (g.mu)(P) = mu(act_gl2(g^{-1}, P)).
VkDual dual_act(const Mat2& g, const VkDual& mu);
// First-order version: (X.mu)(P) = -mu(lie_act_findim(X, P)).
VkDual lie_act_dual(const Mat2& X, const VkDual& mu);

// The normalized eigenbasis of the diagonal torus on the weight-(k-2)
// functionals: mu_m is supported on X^((k-2)/2+m) Y^((k-2)/2-m) with value
// (-1)^((k-2)/2-m) / binom(k-2, (k-2)/2+m).  Needs |m| <= (k-2)/2.
VkDual mu_basis(const FieldPtr& F, int k, int m);

// mu |-> mu applied to (Xy - Yx)^k, a weight-k polynomial in (x, y).
PkPoly dual_iso(const VkDual& mu);
VkDual dual_iso_inv(const PkPoly& P);

// The invariant pairing on weight-k polynomials normalized by
// <X^a Y^(k-a), X^(k-a) Y^a> = (-1)^a / binom(k, a).
NFElem pairing_pk(const PkPoly& P, const PkPoly& Q);

// Rank-two tensor of weight-w functionals, coordinates on the dual monomial
// basis: entry (i, j) multiplies (X^i Y^(w-i))^dual tensor (X^j Y^(w-j))^dual.
struct VkTensor {
  FieldPtr F;
  int w = -1;
  MatrixNF m;

  VkTensor() = default;
  VkTensor(FieldPtr F_, int w_);
  static VkTensor pure(const VkDual& a, const VkDual& b);
  VkTensor& operator+=(const VkTensor& o);
  VkTensor& operator-=(const VkTensor& o);
  VkTensor scaled(const NFElem& s) const;
  friend bool operator==(const VkTensor& a, const VkTensor& b);
};

// Matrix of dual_act(g) on dual-monomial coordinates, so that tensors
// transform by U -> D U D^T.
MatrixNF dual_act_matrix(const Mat2& g, int w);

VkTensor tensor_act(const Mat2& g, const VkTensor& U);

// The invariant vector sum_m binom(k-2,(k-2)/2+m) (-1)^((k-2)/2-m)
// mu_m tensor mu_{-m} in the square of the weight-(k-2) dual.
VkTensor upsilon(const FieldPtr& F, int k);

// Torus eigenbasis P_m = (Y+iX)^m (Y-iX)^(w-m) of the weight-w polynomials,
// with the change-of-basis matrices cached per (field, w): A's column m holds
// the monomial coordinates of P_m.  The dual basis vector P_m^dual has
// dual-monomial coordinates given by row m of A^{-1}, and a functional mu
// expands in the P^dual basis with coefficients A^T mu.
struct PBasis {
  FieldPtr F;
  int w = -1;
  MatrixNF A;
  MatrixNF Ainv;

  PkPoly p(int m) const;           // the polynomial P_m
  VkDual p_dual(int m) const;      // the dual basis functional
  std::vector<NFElem> expand(const VkDual& mu) const;  // P^dual coordinates
};

const PBasis& pbasis(const FieldPtr& F, int w);

}  // namespace gkv
