#include "gkv/gkreal.hpp"

#include "gkv/errors.hpp"
#include "gkv/pkpoly.hpp"

namespace gkv {

GKVecR GKVecR::basis(int k, int n) {
  GKVecR v(k);
  v.add(n, NFElem(v.F_, Rational(1)));
  return v;
}

NFElem GKVecR::coeff(int n) const {
  auto it = c_.find(n);
  if (it == c_.end()) return NFElem(F_);
  return it->second;
}

void GKVecR::add(int n, const NFElem& v) {
  if (v.is_zero()) return;
  auto [it, fresh] = c_.emplace(n, v);
  if (!fresh) {
    it->second += v;
    if (it->second.is_zero()) c_.erase(it);
  }
}

GKVecR GKVecR::operator-() const {
  GKVecR r = *this;
  for (auto& [n, v] : r.c_) v = -v;
  return r;
}

GKVecR& GKVecR::operator+=(const GKVecR& o) {
  if (k_ != o.k_) throw WeightMismatch("weights differ");
  for (const auto& [n, v] : o.c_) add(n, v);
  return *this;
}

GKVecR& GKVecR::operator-=(const GKVecR& o) {
  if (k_ != o.k_) throw WeightMismatch("weights differ");
  for (const auto& [n, v] : o.c_) add(n, -v);
  return *this;
}

GKVecR& GKVecR::operator*=(const NFElem& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& [n, v] : c_) v *= s;
  return *this;
}

bool operator==(const GKVecR& a, const GKVecR& b) {
  return a.k_ == b.k_ && a.c_ == b.c_;
}

GKVecR lie_act_principal(RealGen X, const GKVecR& v) {
  int k = v.weight();
  const FieldPtr& F = v.field();
  NFElem i = imag_unit(F);
  GKVecR r(k);
  switch (X) {
    case RealGen::Hhat:
      for (const auto& [n, c] : v.terms()) {
        r.add(n + 1, c * Rational(k / 2 + n));
        r.add(n - 1, c * Rational(k / 2 - n));
      }
      return r;
    case RealGen::W:
      for (const auto& [n, c] : v.terms())
        r.add(n, c * i * Rational(2 * n));
      return r;
    case RealGen::Wtilde:
      for (const auto& [n, c] : v.terms()) {
        r.add(n + 1, -(c * i) * Rational(k / 2 + n));
        r.add(n - 1, c * i * Rational(k / 2 - n));
      }
      return r;
    default:
      throw BadGenerator("generator outside the real principal-series set");
  }
}

GKVecR kappa_act_real(const GKVecR& v, const NFElem& c, const NFElem& s) {
  const FieldPtr& F = v.field();
  NFElem cc = promote(c, F), ss = promote(s, F);
  if (cc * cc + ss * ss != NFElem(F, Rational(1)))
    throw BadInput("rotation point is not on the unit circle");
  NFElem i = imag_unit(F);
  NFElem up = cc + i * ss;   // scales f_1's square root: f_n picks up up^(2n)
  NFElem dn = cc - i * ss;
  GKVecR r(v.weight());
  for (const auto& [n, cf] : v.terms()) {
    NFElem lambda(F, Rational(1));
    for (int t = 0; t < 2 * n; ++t) lambda *= up;
    for (int t = 0; t < -2 * n; ++t) lambda *= dn;
    r.add(n, cf * lambda);
  }
  return r;
}

GKVecR weyl_act_real(const GKVecR& v, int sign) {
  int k = v.weight();
  Rational s(sign);
  if (((k - 2) / 2) % 2 != 0) s = -s;
  GKVecR r(k);
  for (const auto& [n, c] : v.terms()) r.add(-n, c * s);
  return r;
}

VkDual weyl_act_dual(const VkDual& mu, int sign) {
  const FieldPtr& F = mu.field();
  NFElem one(F, Rational(1));
  Mat2 w = Mat2::diag(one, -one);
  VkDual r = dual_act(w, mu);
  if (sign < 0) r = -r;
  return r;
}

VkDual rho_real(const GKVecR& v, int) {
  int k = v.weight();
  int w = k - 2;
  const FieldPtr& F = v.field();
  const PBasis& B = pbasis(F, w);
  VkDual r(F, w);
  for (const auto& [n, c] : v.terms()) {
    if (n < -w / 2 || n > w / 2) continue;
    r += c * B.p_dual(n + w / 2);
  }
  return r;
}

GKVecR section_real(const VkDual& mu, int k, int) {
  int w = k - 2;
  if (mu.weight() != w) throw WeightMismatch("functional has wrong weight");
  const PBasis& B = pbasis(mu.field(), w);
  auto coords = B.expand(mu);
  GKVecR r(k);
  for (int m = 0; m <= w; ++m) r.add(m - w / 2, coords[m]);
  return r;
}

GKVecR HomVD_R::apply(const VkDual& mu) const {
  int w = k - 2;
  const FieldPtr& F = mu.field();
  GKVecR r(k);
  for (const auto& [m, value] : val) {
    NFElem unit = mu_basis(F, k, m).value_on(w / 2 + m);
    NFElem a = mu.value_on(w / 2 + m) * unit.inv();
    if (a.is_zero()) continue;
    GKVecR piece = value;
    piece *= a;
    r += piece;
  }
  return r;
}

// Pullback through the sign twist: negative-index coefficients change sign
// in the minus model.
static GKVecR iota_pullback(const GKVecR& v, int sign) {
  if (sign > 0) return v;
  GKVecR r(v.weight());
  for (const auto& [n, c] : v.terms()) r.add(n, n < 0 ? -c : c);
  return r;
}

static Mat2 real_gen_matrix(RealGen X, const FieldPtr& F) {
  switch (X) {
    case RealGen::Hhat:
      return gen_Hhat(F);
    case RealGen::W:
      return gen_W(F);
    case RealGen::Wtilde:
      return gen_Wtilde(F);
    default:
      throw BadGenerator("generator outside the real principal-series set");
  }
}

HomVD_R cocycle_value_real(int k, int sign, RealGen X) {
  if (k < 2 || k % 2 != 0) throw BadWeight("even weight at least 2 required");
  auto F = NumberField::cyclotomic8();
  Mat2 Xm = real_gen_matrix(X, F);
  HomVD_R c;
  c.k = k;
  c.sign = sign;
  int w = k - 2;
  for (int m = -w / 2; m <= w / 2; ++m) {
    VkDual mu = mu_basis(F, k, m);
    GKVecR raw = lie_act_principal(X, section_real(mu, k, sign)) -
                 section_real(lie_act_dual(Xm, mu), k, sign);
    c.val.emplace(m, iota_pullback(raw, sign));
  }
  return c;
}

static NFElem i_power(const FieldPtr& F, int e) {
  NFElem i = imag_unit(F);
  NFElem r(F, Rational(1));
  int e4 = ((e % 4) + 4) % 4;
  for (int t = 0; t < e4; ++t) r *= i;
  return r;
}

HomVD_R cocycle_c1_real(int k, int sign) {
  HomVD_R c = cocycle_value_real(k, sign, RealGen::Hhat);
  auto F = NumberField::cyclotomic8();
  int w = k - 2;
  for (int m = -w / 2; m <= w / 2; ++m) {
    GKVecR expect(k);
    NFElem up = i_power(F, -(w / 2 + m));  // (-i)^((k-2)/2+m)
    NFElem dn = i_power(F, w / 2 + m);
    expect.add(k / 2, Rational(k - 1) * up);
    expect.add(-k / 2, Rational((k - 1) * sign) * dn);
    if (!(c.val.at(m) == expect))
      throw FormulaMismatch("cocycle value differs from its closed form");
  }
  return c;
}

bool cocycle_check_real(const HomVD_R& c) {
  int k = c.k;
  auto F = NumberField::cyclotomic8();
  int w = k - 2;

  // Value at Wtilde, once by rotation equivariance at theta = pi/4 where
  // Ad(kappa^-1) Hhat = Wtilde, once from first principles.
  NFElem half_r2 = sqrt2(F) * Rational(1, 2);  // cos(pi/4) = sin(pi/4)
  Mat2 rot{half_r2, half_r2, -half_r2, half_r2};
  HomVD_R via_rotation;
  via_rotation.k = k;
  via_rotation.sign = c.sign;
  for (int m = -w / 2; m <= w / 2; ++m) {
    VkDual moved = dual_act(rot, mu_basis(F, k, m));
    GKVecR out = c.apply(moved);
    via_rotation.val.emplace(m, kappa_act_real(out, half_r2, -half_r2));
  }
  HomVD_R direct = cocycle_value_real(k, c.sign, RealGen::Wtilde);
  for (int m = -w / 2; m <= w / 2; ++m)
    if (!(via_rotation.val.at(m) == direct.val.at(m))) return false;

  // Cocycle differential at (Hhat, Wtilde): the bracket term lands in the
  // compact factor where the cochain vanishes, so only the two Lie terms
  // remain: Hhat c(Wtilde) - Wtilde c(Hhat) applied as operators on Hom.
  Mat2 Hm = gen_Hhat(F), Wm = gen_Wtilde(F);
  for (int m = -w / 2; m <= w / 2; ++m) {
    VkDual mu = mu_basis(F, k, m);
    GKVecR term1 = lie_act_principal(RealGen::Hhat, direct.apply(mu)) -
                   direct.apply(lie_act_dual(Hm, mu));
    GKVecR term2 = lie_act_principal(RealGen::Wtilde, c.apply(mu)) -
                   c.apply(lie_act_dual(Wm, mu));
    if (!(term1 - term2).is_zero()) return false;
  }
  return true;
}

void GKTensorR::add(int n1, int n2, const NFElem& v) {
  if (v.is_zero()) return;
  auto key = std::make_pair(n1, n2);
  auto [it, fresh] = c.emplace(key, v);
  if (!fresh) {
    it->second += v;
    if (it->second.is_zero()) c.erase(it);
  }
}

NFElem GKTensorR::coeff(int n1, int n2) const {
  auto it = c.find(std::make_pair(n1, n2));
  if (it == c.end()) return NFElem(NumberField::cyclotomic8());
  return it->second;
}

static GKTensorR tensor_of(const GKVecR& a, const GKVecR& b, int k) {
  GKTensorR t(k);
  for (const auto& [n1, c1] : a.terms())
    for (const auto& [n2, c2] : b.terms()) t.add(n1, n2, c1 * c2);
  return t;
}

GKTensorR cup2_real(int k) {
  auto F = NumberField::cyclotomic8();
  int w = k - 2;
  HomVD_R cHp = cocycle_c1_real(k, +1);
  HomVD_R cHm = cocycle_c1_real(k, -1);
  HomVD_R cWp = cocycle_value_real(k, +1, RealGen::Wtilde);
  HomVD_R cWm = cocycle_value_real(k, -1, RealGen::Wtilde);

  VkTensor U = upsilon(F, k);
  auto indicator = [&](int idx) {
    VkDual e(F, w);
    e.value_on(idx) = NFElem(F, Rational(1));
    return e;
  };

  GKTensorR cup(k);
  GKTensorR avg_raw(k);
  for (int a = 0; a <= w; ++a)
    for (int b = 0; b <= w; ++b) {
      const NFElem& coeff = U.m.at(a, b);
      if (coeff.is_zero()) continue;
      VkDual ea = indicator(a), eb = indicator(b);
      GKTensorR t1 = tensor_of(cHp.apply(ea), cWm.apply(eb), k);
      GKTensorR t2 = tensor_of(cWp.apply(ea), cHm.apply(eb), k);
      for (const auto& [key, v] : t1.c) cup.add(key.first, key.second, coeff * v);
      for (const auto& [key, v] : t2.c)
        cup.add(key.first, key.second, -(coeff * v));
      // Ambient half-difference for the rotation-average route.
      GKVecR dsa = cHp.apply(ea), dsb = cHp.apply(eb);
      dsa *= NFElem(F, Rational(1, 2));
      dsb *= NFElem(F, Rational(1, 2));
      GKTensorR ds = tensor_of(dsa, dsb, k);
      for (const auto& [key, v] : ds.c)
        avg_raw.add(key.first, key.second, coeff * v);
    }

  // Closed form -(2i)^(k-1) (k-1)^2 (f_(k/2) (x) f_(-k/2) + swap).
  NFElem i = imag_unit(F);
  NFElem scale(F, Rational(1));
  for (int t = 0; t < k - 1; ++t) scale *= i * Rational(2);
  scale = -scale * Rational((k - 1) * (k - 1));
  GKTensorR closed(k);
  closed.add(k / 2, -k / 2, scale);
  closed.add(-k / 2, k / 2, scale);
  if (!(cup == closed))
    throw FormulaMismatch("cup product differs from its closed form");

  // Rotation average: only total-weight-zero components survive.
  GKTensorR averaged(k);
  for (const auto& [key, v] : avg_raw.c)
    if (key.first + key.second == 0)
      averaged.add(key.first, key.second, -(i * Rational(8)) * v);
  if (!(averaged == cup))
    throw FormulaMismatch("rotation-average route disagrees with the cup product");

  return cup;
}

}  // namespace gkv
