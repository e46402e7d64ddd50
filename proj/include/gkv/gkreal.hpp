#pragma once

#include <map>
#include <utility>

#include "gkv/numberfield.hpp"
#include "gkv/vkdual.hpp"

namespace gkv {

// Generators of the archimedean Lie algebra action.  Hhat = (1,0;0,-1),
// W = (0,1;-1,0), Wtilde = (0,1;1,0); Hc = (0,-i;i,0) belongs to the complex
// place and is not part of the real principal-series action.
enum class RealGen { Hhat, W, Wtilde, Hc };

// Finitely supported coefficient vector sum_n c_n f_n in the weight-k
// principal-series model at the real place; f_n restricts to
// y^(k/2) e^(2 i n theta) in Iwasawa coordinates.  Coefficients live in the
// eighth cyclotomic field.
class GKVecR {
 public:
  explicit GKVecR(int k) : k_(k), F_(NumberField::cyclotomic8()) {}
  static GKVecR basis(int k, int n);

  int weight() const { return k_; }
  const FieldPtr& field() const { return F_; }
  const std::map<int, NFElem>& terms() const { return c_; }
  NFElem coeff(int n) const;
  void add(int n, const NFElem& v);
  bool is_zero() const { return c_.empty(); }

  GKVecR operator-() const;
  GKVecR& operator+=(const GKVecR& o);
  GKVecR& operator-=(const GKVecR& o);
  GKVecR& operator*=(const NFElem& s);
  friend GKVecR operator+(GKVecR a, const GKVecR& b) { return a += b; }
  friend GKVecR operator-(GKVecR a, const GKVecR& b) { return a -= b; }
  friend GKVecR operator*(GKVecR a, const NFElem& s) { return a *= s; }
  friend GKVecR operator*(const NFElem& s, GKVecR a) { return a *= s; }
  friend bool operator==(const GKVecR& a, const GKVecR& b);
  friend bool operator!=(const GKVecR& a, const GKVecR& b) { return !(a == b); }

 private:
  int k_;
  FieldPtr F_;
  std::map<int, NFElem> c_;
};

// Hhat f_n = (k/2+n) f_(n+1) + (k/2-n) f_(n-1); W f_n = 2in f_n;
// Wtilde f_n = -i(k/2+n) f_(n+1) + i(k/2-n) f_(n-1).  BadGenerator for Hc.
GKVecR lie_act_principal(RealGen X, const GKVecR& v);

// Rotation (c, s; -s, c) with c^2 + s^2 = 1 scales f_n by (c + i s)^(2n).
GKVecR kappa_act_real(const GKVecR& v, const NFElem& c, const NFElem& s);

// diag(1,-1) with the sign twist of the two-sided model baked in:
// f_n -> sign * (-1)^((k-2)/2) f_(-n).
GKVecR weyl_act_real(const GKVecR& v, int sign);
// The matching twisted action on weight-(k-2) functionals:
// sign * dual_act(diag(1,-1)).
VkDual weyl_act_dual(const VkDual& mu, int sign);

// rho(f_n) is the dual basis vector of the circle eigenbasis at index
// n + (k-2)/2 when |n| <= (k-2)/2, and zero for |n| >= k/2.
VkDual rho_real(const GKVecR& v, int sign);
// The equivariant section: the functional dual to P_m goes to f_(m-(k-2)/2).
GKVecR section_real(const VkDual& mu, int k, int sign);

// A homomorphism V(k-2)(sign) -> D(k), stored by its values on the torus
// functionals mu_m, each supported in |n| >= k/2.
struct HomVD_R {
  int k = 0;
  int sign = 1;
  std::map<int, GKVecR> val;

  GKVecR apply(const VkDual& mu) const;
};

// First-principles value X(s mu) - s(X mu), pulled back through the sign
// twist of the two-sided model (negative-n coefficients flip for sign -1).
HomVD_R cocycle_value_real(int k, int sign, RealGen X);

// The cocycle at Hhat.  Checked on every mu_m against the closed form
// (k-1)((-i)^((k-2)/2+m) f_(k/2) + sign * i^((k-2)/2+m) f_(-k/2));
// FormulaMismatch if the two computations ever differ.
HomVD_R cocycle_c1_real(int k, int sign);

// Verifies that c (given at Hhat) extends to a 1-cocycle: the value at
// Wtilde computed by rotation equivariance at theta = pi/4 agrees with the
// direct first-principles value, and the cocycle differential at
// (Hhat, Wtilde) vanishes once the bracket 2W lands in the compact factor.
bool cocycle_check_real(const HomVD_R& c);

// Finitely supported tensor sum c_(n1,n2) f_n1 (x) f_n2.
struct GKTensorR {
  int k = 0;
  std::map<std::pair<int, int>, NFElem> c;

  explicit GKTensorR(int k_) : k(k_) {}
  void add(int n1, int n2, const NFElem& v);
  NFElem coeff(int n1, int n2) const;
  friend bool operator==(const GKTensorR& a, const GKTensorR& b) {
    return a.k == b.k && a.c == b.c;
  }
};

// Cup product of the two one-sided cocycles at (Hhat, Wtilde), evaluated on
// the invariant tensor of weight k-2.  Computed as
// c1+(Hhat) (x) c1-(Wtilde) - c1+(Wtilde) (x) c1-(Hhat) on that tensor and
// checked against both the closed form
// -(2i)^(k-1) (k-1)^2 (f_(k/2) (x) f_(-k/2) + f_(-k/2) (x) f_(k/2)) and the
// rotation-average route -8i x (total-weight-zero part of
// (ds (x) ds)(invariant tensor)) with ds = (1/2)(Hhat(s mu) - s(Hhat mu)).
// FormulaMismatch when any pair disagrees.
GKTensorR cup2_real(int k);

}  // namespace gkv
