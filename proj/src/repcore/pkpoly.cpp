#include "gkv/pkpoly.hpp"

#include "gkv/errors.hpp"

namespace gkv {

Mat2 Mat2::identity(const FieldPtr& F) {
  NFElem one(F, Rational(1));
  NFElem zero(F);
  return {one, zero, zero, one};
}

Mat2 Mat2::diag(const NFElem& x, const NFElem& y) {
  NFElem zero(x.field());
  return {x, zero, zero, y};
}

Mat2 Mat2::inverse() const {
  NFElem dt = det();
  if (dt.is_zero()) throw SingularMatrix("2x2 matrix is singular");
  NFElem di = dt.inv();
  return {d * di, -b * di, -c * di, a * di};
}

Mat2 Mat2::operator*(const Mat2& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d,
          c * o.a + d * o.c, c * o.b + d * o.d};
}

Mat2 Mat2::conj_by(const Mat2& g) const { return g * (*this) * g.inverse(); }

NFElem imag_unit(const FieldPtr& F) {
  const auto& m = F->minpoly();
  NFElem g = NFElem::gen(F);
  if (m.size() == 3 && m[0] == Rational(1) && m[1] == Rational(0)) return g;
  if (m.size() == 5 && m[0] == Rational(1) && m[1] == Rational(0) &&
      m[2] == Rational(0) && m[3] == Rational(0))
    return g * g;
  throw MissingRoot("field has no designated square root of -1");
}

NFElem sqrt2(const FieldPtr& F) {
  const auto& m = F->minpoly();
  if (!(m.size() == 5 && m[0] == Rational(1) && m[1] == Rational(0) &&
        m[2] == Rational(0) && m[3] == Rational(0)))
    throw MissingRoot("field has no designated square root of 2");
  NFElem g = NFElem::gen(F);
  return g + g.inv();
}

Mat2 gen_Hhat(const FieldPtr& F) {
  NFElem one(F, Rational(1));
  NFElem zero(F);
  return {one, zero, zero, -one};
}

Mat2 gen_W(const FieldPtr& F) {
  NFElem one(F, Rational(1));
  NFElem zero(F);
  return {zero, one, -one, zero};
}

Mat2 gen_Wtilde(const FieldPtr& F) {
  NFElem one(F, Rational(1));
  NFElem zero(F);
  return {zero, one, one, zero};
}

Mat2 gen_Hc(const FieldPtr& F) {
  NFElem i = imag_unit(F);
  NFElem zero(F);
  return {zero, -i, i, zero};
}

PkPoly PkPoly::monomial(const FieldPtr& F, int k, int xdeg,
                        const NFElem& coeff) {
  if (xdeg < 0 || xdeg > k) throw BadIndex("monomial degree out of range");
  PkPoly P(F, k);
  P.c_[xdeg] = coeff;
  return P;
}

bool PkPoly::is_zero() const {
  for (const auto& x : c_)
    if (!x.is_zero()) return false;
  return true;
}

PkPoly PkPoly::operator-() const {
  PkPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

static void check_same_weight(int a, int b) {
  if (a != b) throw WeightMismatch("weights differ");
}

PkPoly& PkPoly::operator+=(const PkPoly& o) {
  check_same_weight(k_, o.k_);
  for (int j = 0; j <= k_; ++j) c_[j] += o.c_[j];
  return *this;
}

PkPoly& PkPoly::operator-=(const PkPoly& o) {
  check_same_weight(k_, o.k_);
  for (int j = 0; j <= k_; ++j) c_[j] -= o.c_[j];
  return *this;
}

PkPoly& PkPoly::operator*=(const NFElem& s) {
  for (auto& x : c_) x *= s;
  return *this;
}

bool operator==(const PkPoly& a, const PkPoly& b) {
  if (a.k_ != b.k_) return false;
  for (int j = 0; j <= a.k_; ++j)
    if (a.c_[j] != b.c_[j]) return false;
  return true;
}

PkPoly PkPoly::dx() const {
  if (k_ == 0) return PkPoly(F_, 0);
  PkPoly r(F_, k_ - 1);
  for (int j = 1; j <= k_; ++j) r.c_[j - 1] = c_[j] * Rational(j);
  return r;
}

PkPoly PkPoly::dy() const {
  if (k_ == 0) return PkPoly(F_, 0);
  PkPoly r(F_, k_ - 1);
  for (int j = 0; j < k_; ++j) r.c_[j] = c_[j] * Rational(k_ - j);
  return r;
}

PkPoly mul(const PkPoly& a, const PkPoly& b) {
  PkPoly r(a.F_, a.k_ + b.k_);
  for (int i = 0; i <= a.k_; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (int j = 0; j <= b.k_; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  }
  return r;
}

PkPoly act_gl2(const Mat2& g, const PkPoly& P) {
  int k = P.weight();
  if (k % 2 != 0) throw BadWeight("group action needs even weight");
  NFElem dt = g.det();
  if (dt.is_zero()) throw SingularMatrix("group element is singular");
  const FieldPtr& F = P.field();

  // Powers of the images of X and Y: (aX+cY)^j and (bX+dY)^j.
  std::vector<PkPoly> px(k + 1), py(k + 1);
  PkPoly imx(F, 1), imy(F, 1);
  imx.coeff(1) = g.a;
  imx.coeff(0) = g.c;
  imy.coeff(1) = g.b;
  imy.coeff(0) = g.d;
  px[0] = PkPoly::monomial(F, 0, 0, NFElem(F, Rational(1)));
  py[0] = px[0];
  for (int j = 1; j <= k; ++j) {
    px[j] = mul(px[j - 1], imx);
    py[j] = mul(py[j - 1], imy);
  }

  PkPoly r(F, k);
  for (int j = 0; j <= k; ++j) {
    if (P.coeff(j).is_zero()) continue;
    r += P.coeff(j) * mul(px[j], py[k - j]);
  }
  NFElem di = dt.inv();
  NFElem scale(F, Rational(1));
  for (int s = 0; s < k / 2; ++s) scale *= di;
  return scale * r;
}

PkPoly lie_act_findim(const Mat2& X, const PkPoly& P) {
  if (!X.trace().is_zero()) throw NotTraceZero("matrix has nonzero trace");
  int k = P.weight();
  const FieldPtr& F = P.field();
  PkPoly r(F, k);
  const NFElem& p = X.a;
  const NFElem& q = X.b;
  const NFElem& rr = X.c;
  for (int j = 0; j <= k; ++j) {
    const NFElem& cj = P.coeff(j);
    if (cj.is_zero()) continue;
    r.coeff(j) += cj * Rational(2 * j - k) * p;
    if (j >= 1) r.coeff(j - 1) += cj * Rational(j) * rr;
    if (j <= k - 1) r.coeff(j + 1) += cj * Rational(k - j) * q;
  }
  return r;
}

PkPoly transvectant(const PkPoly& f, const PkPoly& g, int r) {
  if (r < 0 || r > f.weight() || r > g.weight())
    throw BadIndex("transvectant order out of range");
  const FieldPtr& F = f.field();
  // Iterated partials of each factor: df[i] = d^r f / dX^(r-i) dY^i.
  std::vector<PkPoly> df(r + 1), dg(r + 1);
  for (int i = 0; i <= r; ++i) {
    PkPoly u = f, v = g;
    for (int s = 0; s < r - i; ++s) u = u.dx();
    for (int s = 0; s < i; ++s) u = u.dy();
    for (int s = 0; s < i; ++s) v = v.dx();
    for (int s = 0; s < r - i; ++s) v = v.dy();
    df[i] = u;
    dg[i] = v;
  }
  PkPoly acc(F, f.weight() + g.weight() - 2 * r);
  for (int i = 0; i <= r; ++i) {
    Rational c = Rational::binom(r, i);
    if (i % 2 == 1) c = -c;
    acc += NFElem(F, c) * mul(df[i], dg[i]);
  }
  return acc;
}

PkPoly quadratic_of_matrix(const Mat2& X, int check_trace) {
  if (check_trace && !X.trace().is_zero())
    throw NotTraceZero("matrix has nonzero trace");
  PkPoly r(X.a.field(), 2);
  r.coeff(2) = X.b;
  r.coeff(1) = X.a * Rational(-2);
  r.coeff(0) = -X.c;
  return r;
}

}  // namespace gkv
