#pragma once

#include <array>
#include <map>
#include <memory>
#include <vector>

#include "gkv/numberfield.hpp"
#include "gkv/pkpoly.hpp"

namespace gkv {

// Quaternion algebra (a, b / F): i^2 = a, j^2 = b, k = ij = -ji, k^2 = -ab.
struct QuaternionAlgebra;
using QuatAlgPtr = std::shared_ptr<const QuaternionAlgebra>;

struct QuaternionAlgebra {
  FieldPtr base_field;
  NFElem a;
  NFElem b;

  static QuatAlgPtr make(const FieldPtr& F, const NFElem& a, const NFElem& b);
  bool same(const QuaternionAlgebra& o) const;
};

// Element x0 + x1 i + x2 j + x3 k with coordinates in the base field.
class QuatElem {
 public:
  explicit QuatElem(QuatAlgPtr B);
  QuatElem(QuatAlgPtr B, std::array<NFElem, 4> coords);
  static QuatElem one(const QuatAlgPtr& B);
  static QuatElem unit_i(const QuatAlgPtr& B);
  static QuatElem unit_j(const QuatAlgPtr& B);
  static QuatElem unit_k(const QuatAlgPtr& B);

  const QuatAlgPtr& algebra() const { return B_; }
  const NFElem& coord(int n) const { return x_[n]; }
  bool is_zero() const;
  bool is_trace_zero() const { return x_[0].is_zero(); }

  QuatElem conj() const;
  NFElem trace() const { return x_[0] + x_[0]; }
  NFElem norm() const;
  QuatElem inv() const;  // DivisionByZero when the norm vanishes

  QuatElem operator-() const;
  QuatElem& operator+=(const QuatElem& o);
  QuatElem& operator-=(const QuatElem& o);
  QuatElem& operator*=(const NFElem& s);
  friend QuatElem operator+(QuatElem a, const QuatElem& b) { return a += b; }
  friend QuatElem operator-(QuatElem a, const QuatElem& b) { return a -= b; }
  friend QuatElem operator*(QuatElem a, const NFElem& s) { return a *= s; }
  friend QuatElem operator*(const NFElem& s, QuatElem a) { return a *= s; }
  friend QuatElem operator*(const QuatElem& x, const QuatElem& y);
  friend bool operator==(const QuatElem& x, const QuatElem& y);
  friend bool operator!=(const QuatElem& x, const QuatElem& y) {
    return !(x == y);
  }

 private:
  QuatAlgPtr B_;
  std::array<NFElem, 4> x_;
};

// Tr(b1 * conj(b2)), the symmetric bilinear form on the trace-zero part.
NFElem trace_pairing(const QuatElem& b1, const QuatElem& b2);

// Element of Sym^n of the trace-zero part, stored by exponent triples
// (e_i, e_j, e_k) with e_i + e_j + e_k = n.
class SymTensor {
 public:
  using Key = std::array<int, 3>;

  SymTensor(QuatAlgPtr B, int degree);
  static SymTensor monomial(const QuatAlgPtr& B, const Key& e,
                            const NFElem& c);
  // Degree-1 tensor from a trace-zero quaternion; NotTraceZero otherwise.
  static SymTensor from_quat(const QuatElem& q);

  const QuatAlgPtr& algebra() const { return B_; }
  int degree() const { return deg_; }
  const std::map<Key, NFElem>& terms() const { return terms_; }
  NFElem coeff(const Key& e) const;
  void add_term(const Key& e, const NFElem& c);
  bool is_zero() const { return terms_.empty(); }

  SymTensor operator-() const;
  SymTensor& operator+=(const SymTensor& o);
  SymTensor& operator-=(const SymTensor& o);
  SymTensor& operator*=(const NFElem& s);
  friend SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
  friend SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
  friend SymTensor operator*(SymTensor a, const NFElem& s) { return a *= s; }
  friend SymTensor operator*(const NFElem& s, SymTensor a) { return a *= s; }
  friend bool operator==(const SymTensor& a, const SymTensor& b);
  friend bool operator!=(const SymTensor& a, const SymTensor& b) {
    return !(a == b);
  }
  friend SymTensor mul(const SymTensor& a, const SymTensor& b);

 private:
  QuatAlgPtr B_;
  int deg_;
  std::map<Key, NFElem> terms_;
};

// Contraction sum_{s<t} <b_s, b_t> b_1 ... (s, t omitted); degree drops by 2.
SymTensor delta_k(const SymTensor& t);

// Harmonic tensor: a kernel element of delta_k together with its weight
// k = 2 * degree.
struct VkElem {
  SymTensor t;
  int k;

  static VkElem make(SymTensor t);  // BadInput when not harmonic
};

// Echelonized basis of ker(delta_k) in Sym^(k/2); size k+1.
std::vector<VkElem> vk_basis(const QuatAlgPtr& B, int k);

// Splitting over a field containing sqrt_a with sqrt_a^2 = a:
// x0 + x1 i + x2 j + x3 k  |->  (e1, b e2; conj(e2), conj(e1)) with
// e1 = x0 + x1 sqrt_a, e2 = x2 + x3 sqrt_a.
Mat2 iota_embed(const QuatElem& q, const NFElem& sqrt_a);

// The quadratic Tr((XY, Y^2; -X^2, -XY) m) = -m.b X^2 + (m.a - m.d) XY + m.c Y^2,
// the single factor of the harmonic-to-polynomial isomorphism.
PkPoly kappa_factor(const Mat2& m);

// Harmonic tensors to weight-k polynomials: each degree-one slot b contributes
// the factor kappa_factor(iota_embed(b)).
PkPoly kappa_embed(const VkElem& v, const NFElem& sqrt_a);

// Exact Laurent polynomial in the formal circle parameter u.
struct LaurentU {
  FieldPtr F;
  std::map<int, NFElem> c;

  explicit LaurentU(FieldPtr F_) : F(std::move(F_)) {}
  NFElem coeff(int n) const;
  void add(int n, const NFElem& v);
  bool is_constant() const;
  friend LaurentU operator*(const LaurentU& x, const LaurentU& y);
  friend bool operator==(const LaurentU& x, const LaurentU& y);
};

// Value of a tensor on the formal circle: each slot b contributes
// Tr((1, u; 1/u, -1) iota_embed(b)).  Constant on harmonic invariants.
LaurentU torus_eval(const SymTensor& t, const NFElem& sqrt_a);
LaurentU torus_eval(const VkElem& v, const NFElem& sqrt_a);

// Norm-one units c + d i of the splitting subfield act by conjugation:
// i fixed, j -> c j + d k, k -> a d j + c k with c^2 - a d^2 = 1.  True when
// the tensor is fixed as an identity in the (c, d) polynomial ring modulo
// that relation.
bool is_norm_one_invariant(const VkElem& v);

// Echelonized basis of the subspace of ker(delta_k) fixed by all norm-one
// units of the splitting subfield.
std::vector<VkElem> torus_invariants(const QuatAlgPtr& B, int k);

// The distinguished invariant harmonic tensor: solves delta_k = 0 in the span
// of the products (degree-2 invariant)^n (degree-1 invariant)^(k/2-2n),
// cross-checked against the fixed subspace of the full kernel; normalized so
// its first nonzero coordinate is 1.  NonUniqueInvariant when either route
// fails to produce a single line.
VkElem invariant_vector(const QuatAlgPtr& B, int k);

}  // namespace gkv
