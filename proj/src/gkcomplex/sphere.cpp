#include <utility>

#include "gkv/errors.hpp"
#include "gkv/gkcomplex.hpp"

namespace gkv {

NFElem conj_c(const NFElem& x) {
  const FieldPtr& F = x.field();
  if (F->degree() == 1) return x;
  const auto& m = F->minpoly();
  NFElem g = NFElem::gen(F);
  if (m.size() == 3 && m[0] == Rational(1) && m[1] == Rational(0))
    return x.subst_gen(-g);
  if (m.size() == 5 && m[0] == Rational(1) && m[1] == Rational(0) &&
      m[2] == Rational(0) && m[3] == Rational(0))
    return x.subst_gen(-(g * g * g));
  throw BadInput("field has no designated complex conjugation");
}

Mat2 conj_mat(const Mat2& g) {
  return {conj_c(g.a), conj_c(g.b), conj_c(g.c), conj_c(g.d)};
}

Mat2 su2_point(const NFElem& a, const NFElem& b) {
  NFElem one(a.field(), Rational(1));
  if (a * conj_c(a) + b * conj_c(b) != one)
    throw BadInput("su2_point needs |a|^2 + |b|^2 = 1");
  return {a, b, -conj_c(b), conj_c(a)};
}

CharC CharC::for_weights(int k_id, int k_c) {
  if (k_id < 2 || k_c < 2 || k_id % 2 != 0 || k_c % 2 != 0)
    throw BadWeight("character needs even weights >= 2");
  return {(k_id + k_c) / 2, (k_id - k_c) / 2};
}

SpherePoly SpherePoly::operator-() const { return {r_exp, -p}; }

SpherePoly& SpherePoly::operator+=(const SpherePoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    *this = o;
    return *this;
  }
  if (r_exp != o.r_exp) throw BadInput("radial exponents differ");
  p += o.p;
  return *this;
}

SpherePoly& SpherePoly::operator-=(const SpherePoly& o) { return *this += -o; }

SpherePoly& SpherePoly::operator*=(const NFElem& s) {
  p *= s;
  return *this;
}

bool operator==(const SpherePoly& a, const SpherePoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.r_exp == b.r_exp && a.p == b.p;
}

SpherePoly phi_expand(int n, const VkDual& mu, CharC chi) {
  if (n < std::abs(chi.lambda)) throw BadLevel("level below |lambda|");
  if (mu.weight() != 2 * n) throw WeightMismatch("functional weight is not twice the level");
  const FieldPtr& F = mu.field();
  RingPtr ring = PolyRing::sphere(F);
  int a = n + chi.lambda, b = n - chi.lambda;
  MultiPoly p(ring);
  for (int j = 0; j <= a; ++j) {
    for (int l = 0; l <= b; ++l) {
      const NFElem& val = mu.value_on((a - j) + (b - l));
      if (val.is_zero()) continue;
      Rational coef = Rational::binom(a, j) * Rational::binom(b, l);
      if ((a - j + b) % 2 != 0) coef = -coef;
      p += MultiPoly::monomial(ring, {j, a - j, b - l, l}, val * coef);
    }
  }
  return {2 * chi.N, p};
}

SpherePoly phi_expand(const PhiVec& v) {
  SpherePoly out{2 * v.chi.N, MultiPoly(v.F ? PolyRing::sphere(v.F) : RingPtr())};
  for (const auto& [n, mu] : v.c) out += phi_expand(n, mu, v.chi);
  return out;
}

SpherePoly sphere_translate(const SpherePoly& f, const NFElem& a, const NFElem& b) {
  su2_point(a, b);
  if (f.is_zero()) return f;
  RingPtr ring = f.p.ring();
  NFElem ab = conj_c(a), bb = conj_c(b);
  MultiPoly va = MultiPoly::var(ring, "alpha"), vb = MultiPoly::var(ring, "beta");
  MultiPoly vab = MultiPoly::var(ring, "alphabar"), vbb = MultiPoly::var(ring, "betabar");
  std::vector<MultiPoly> images = {
      va * a - vb * bb,    // alpha at the translated point
      va * b + vb * ab,    // beta
      vab * ab - vbb * b,  // alphabar
      vab * bb + vbb * a,  // betabar
  };
  return {f.r_exp, f.p.subst(images)};
}

SpherePoly hatH_oracle(const SpherePoly& f, int N) {
  if (f.is_zero()) return f;
  RingPtr ring = f.p.ring();
  MultiPoly va = MultiPoly::var(ring, "alpha"), vb = MultiPoly::var(ring, "beta");
  MultiPoly vab = MultiPoly::var(ring, "alphabar"), vbb = MultiPoly::var(ring, "betabar");
  MultiPoly aa = va * vab, bb = vb * vbb;
  MultiPoly out = (aa - bb) * f.p * Rational(2 * N);
  out -= va * bb * f.p.deriv(0) * Rational(2);
  out -= vab * bb * f.p.deriv(2) * Rational(2);
  out += vb * aa * f.p.deriv(1) * Rational(2);
  out += vbb * aa * f.p.deriv(3) * Rational(2);
  return {f.r_exp, out};
}

Rational moment_su2(int n1, int m1, int n2, int m2) {
  if (n1 < 0 || m1 < 0 || n2 < 0 || m2 < 0) throw BadInput("negative exponent");
  if (n1 != n2 || m1 != m2) return Rational(0);
  return (Rational(n1 + m1 + 1) * Rational::binom(n1 + m1, n1)).inv();
}

NFElem moment_average(const MultiPoly& p) {
  if (p.is_zero() && !p.ring()) throw BadInput("moment of an unringed zero polynomial");
  if (p.ring()->nvars() != 4) throw BadInput("moment needs a four-variable ring");
  NFElem out(p.ring()->field());
  for (const auto& [e, c] : p.terms())
    out += c * moment_su2(e[0], e[1], e[2], e[3]);
  return out;
}

NFElem moment_average(const SpherePoly& f) { return moment_average(f.p); }

}  // namespace gkv
