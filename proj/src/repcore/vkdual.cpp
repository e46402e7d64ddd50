#include "gkv/vkdual.hpp"

#include <map>
#include <utility>

#include "gkv/errors.hpp"

namespace gkv {

bool VkDual::is_zero() const {
  for (const auto& x : v_)
    if (!x.is_zero()) return false;
  return true;
}

NFElem VkDual::apply(const PkPoly& P) const {
  if (P.weight() != k_) throw WeightMismatch("functional applied to wrong weight");
  NFElem acc(F_);
  for (int j = 0; j <= k_; ++j) acc += v_[j] * P.coeff(j);
  return acc;
}

VkDual VkDual::operator-() const {
  VkDual r = *this;
  for (auto& x : r.v_) x = -x;
  return r;
}

VkDual& VkDual::operator+=(const VkDual& o) {
  if (k_ != o.k_) throw WeightMismatch("weights differ");
  for (int j = 0; j <= k_; ++j) v_[j] += o.v_[j];
  return *this;
}

VkDual& VkDual::operator-=(const VkDual& o) {
  if (k_ != o.k_) throw WeightMismatch("weights differ");
  for (int j = 0; j <= k_; ++j) v_[j] -= o.v_[j];
  return *this;
}

VkDual& VkDual::operator*=(const NFElem& s) {
  for (auto& x : v_) x *= s;
  return *this;
}

bool operator==(const VkDual& a, const VkDual& b) {
  if (a.k_ != b.k_) return false;
  for (int j = 0; j <= a.k_; ++j)
    if (a.v_[j] != b.v_[j]) return false;
  return true;
}

VkDual dual_act(const Mat2& g, const VkDual& mu) {
  int k = mu.weight();
  const FieldPtr& F = mu.field();
  Mat2 gi = g.inverse();
  VkDual r(F, k);
  for (int j = 0; j <= k; ++j) {
    PkPoly im = act_gl2(gi, PkPoly::monomial(F, k, j, NFElem(F, Rational(1))));
    r.value_on(j) = mu.apply(im);
  }
  return r;
}

VkDual lie_act_dual(const Mat2& X, const VkDual& mu) {
  int k = mu.weight();
  const FieldPtr& F = mu.field();
  VkDual r(F, k);
  for (int j = 0; j <= k; ++j) {
    PkPoly im =
        lie_act_findim(X, PkPoly::monomial(F, k, j, NFElem(F, Rational(1))));
    r.value_on(j) = -mu.apply(im);
  }
  return r;
}

VkDual mu_basis(const FieldPtr& F, int k, int m) {
  if (k < 2 || k % 2 != 0) throw BadWeight("even weight at least 2 required");
  int w = k - 2;
  if (m < -w / 2 || m > w / 2) throw BadIndex("torus weight out of range");
  VkDual mu(F, w);
  Rational val = Rational::binom(w, w / 2 + m).inv();
  if ((w / 2 - m) % 2 != 0) val = -val;
  mu.value_on(w / 2 + m) = NFElem(F, val);
  return mu;
}

PkPoly dual_iso(const VkDual& mu) {
  int k = mu.weight();
  const FieldPtr& F = mu.field();
  PkPoly r(F, k);
  // (Xy - Yx)^k expands as sum_j binom(k,j) (-1)^(k-j) X^j Y^(k-j) x^(k-j) y^j,
  // so the x-degree-i coefficient picks up mu on the degree-(k-i) monomial.
  for (int i = 0; i <= k; ++i) {
    Rational c = Rational::binom(k, i);
    if (i % 2 == 1) c = -c;
    r.coeff(i) = mu.value_on(k - i) * c;
  }
  return r;
}

VkDual dual_iso_inv(const PkPoly& P) {
  int k = P.weight();
  VkDual mu(P.field(), k);
  for (int j = 0; j <= k; ++j) {
    Rational c = Rational::binom(k, j).inv();
    if ((k - j) % 2 == 1) c = -c;
    mu.value_on(j) = P.coeff(k - j) * c;
  }
  return mu;
}

NFElem pairing_pk(const PkPoly& P, const PkPoly& Q) {
  if (P.weight() != Q.weight()) throw WeightMismatch("pairing needs equal weights");
  int k = P.weight();
  NFElem acc(P.field());
  for (int a = 0; a <= k; ++a) {
    NFElem t = P.coeff(a) * Q.coeff(k - a);
    if (t.is_zero()) continue;
    Rational c = Rational::binom(k, a).inv();
    if (a % 2 == 1) c = -c;
    acc += t * c;
  }
  return acc;
}

VkTensor::VkTensor(FieldPtr F_, int w_)
    : F(std::move(F_)), w(w_), m(F, w_ + 1, w_ + 1) {}

VkTensor VkTensor::pure(const VkDual& a, const VkDual& b) {
  if (a.weight() != b.weight()) throw WeightMismatch("tensor factor weights differ");
  VkTensor U(a.field(), a.weight());
  for (int i = 0; i <= U.w; ++i)
    for (int j = 0; j <= U.w; ++j)
      U.m.at(i, j) = a.value_on(i) * b.value_on(j);
  return U;
}

VkTensor& VkTensor::operator+=(const VkTensor& o) {
  if (w != o.w) throw WeightMismatch("tensor weights differ");
  m = m + o.m;
  return *this;
}

VkTensor& VkTensor::operator-=(const VkTensor& o) {
  if (w != o.w) throw WeightMismatch("tensor weights differ");
  m = m - o.m;
  return *this;
}

VkTensor VkTensor::scaled(const NFElem& s) const {
  VkTensor U = *this;
  U.m = U.m.scaled(s);
  return U;
}

bool operator==(const VkTensor& a, const VkTensor& b) {
  return a.w == b.w && a.m == b.m;
}

MatrixNF dual_act_matrix(const Mat2& g, int w) {
  const FieldPtr& F = g.a.field();
  // Column i of S holds act_gl2(g^{-1}) of the i-th monomial; dual vectors
  // transform by S^T.
  Mat2 gi = g.inverse();
  MatrixNF D(F, w + 1, w + 1);
  for (int i = 0; i <= w; ++i) {
    PkPoly im = act_gl2(gi, PkPoly::monomial(F, w, i, NFElem(F, Rational(1))));
    for (int j = 0; j <= w; ++j) D.at(i, j) = im.coeff(j);
  }
  return D;
}

VkTensor tensor_act(const Mat2& g, const VkTensor& U) {
  MatrixNF D = dual_act_matrix(g, U.w);
  VkTensor R = U;
  R.m = D * U.m * D.transpose();
  return R;
}

VkTensor upsilon(const FieldPtr& F, int k) {
  if (k < 2 || k % 2 != 0) throw BadWeight("even weight at least 2 required");
  int w = k - 2;
  VkTensor U(F, w);
  for (int m = -w / 2; m <= w / 2; ++m) {
    Rational c = Rational::binom(w, w / 2 + m);
    if ((w / 2 - m) % 2 != 0) c = -c;
    VkTensor piece = VkTensor::pure(mu_basis(F, k, m), mu_basis(F, k, -m));
    U += piece.scaled(NFElem(F, c));
  }
  return U;
}

PkPoly PBasis::p(int m) const {
  if (m < 0 || m > w) throw BadIndex("eigenbasis index out of range");
  PkPoly P(F, w);
  for (int j = 0; j <= w; ++j) P.coeff(j) = A.at(j, m);
  return P;
}

VkDual PBasis::p_dual(int m) const {
  if (m < 0 || m > w) throw BadIndex("eigenbasis index out of range");
  VkDual mu(F, w);
  for (int j = 0; j <= w; ++j) mu.value_on(j) = Ainv.at(m, j);
  return mu;
}

std::vector<NFElem> PBasis::expand(const VkDual& mu) const {
  if (mu.weight() != w) throw WeightMismatch("functional has wrong weight");
  std::vector<NFElem> out(w + 1, NFElem(F));
  for (int m = 0; m <= w; ++m) {
    NFElem acc(F);
    for (int j = 0; j <= w; ++j) acc += A.at(j, m) * mu.value_on(j);
    out[m] = acc;
  }
  return out;
}

const PBasis& pbasis(const FieldPtr& F, int w) {
  static std::map<std::pair<const NumberField*, int>, PBasis> cache;
  auto key = std::make_pair(F.get(), w);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  NFElem i = imag_unit(F);
  NFElem one(F, Rational(1));
  PBasis B;
  B.F = F;
  B.w = w;
  B.A = MatrixNF(F, w + 1, w + 1);
  // P_m = (Y + iX)^m (Y - iX)^(w-m); column m collects its monomial coords.
  PkPoly up(F, 1), dn(F, 1);
  up.coeff(1) = i;
  up.coeff(0) = one;
  dn.coeff(1) = -i;
  dn.coeff(0) = one;
  for (int m = 0; m <= w; ++m) {
    PkPoly P = PkPoly::monomial(F, 0, 0, one);
    for (int s = 0; s < m; ++s) P = mul(P, up);
    for (int s = 0; s < w - m; ++s) P = mul(P, dn);
    for (int j = 0; j <= w; ++j) B.A.at(j, m) = P.coeff(j);
  }
  B.Ainv = B.A.inverse();
  return cache.emplace(key, std::move(B)).first->second;
}

}  // namespace gkv
