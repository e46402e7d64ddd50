#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <utility>
#include <vector>

#include "doctest.h"
#include "gkv/errors.hpp"
#include "gkv/gkcomplex.hpp"

using namespace gkv;

namespace {

const FieldPtr& Q8() { return NumberField::cyclotomic8(); }
const FieldPtr& Qi() { return NumberField::gaussian(); }

NFElem nf(const FieldPtr& F, long num, long den = 1) {
  return NFElem(F, Rational(num, den));
}

NFElem rnd_elem(const FieldPtr& F, std::mt19937_64& rng) {
  NFElem a = nf(F, static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 3) + 1);
  NFElem b = nf(F, static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 3) + 1);
  return a + b * imag_unit(F);
}

VkDual rnd_dual(const FieldPtr& F, int w, std::mt19937_64& rng) {
  VkDual mu(F, w);
  for (int j = 0; j <= w; ++j) mu.value_on(j) = rnd_elem(F, rng);
  return mu;
}

PhiVec rnd_phivec(const FieldPtr& F, CharC chi, int nmax, std::mt19937_64& rng) {
  PhiVec v(F, chi);
  for (int n = std::abs(chi.lambda); n <= nmax; ++n)
    if (rng() % 2) v.add(n, rnd_dual(F, 2 * n, rng));
  if (v.is_zero()) v.add(nmax, rnd_dual(F, 2 * nmax, rng));
  return v;
}

VkDual unit_dual(const FieldPtr& F, int w, int j) {
  VkDual mu(F, w);
  mu.value_on(j) = nf(F, 1);
  return mu;
}

PairDual rnd_pair(const FieldPtr& F, int w1, int w2, std::mt19937_64& rng) {
  PairDual mu(F, w1, w2);
  for (int i = 0; i <= w1; ++i)
    for (int j = 0; j <= w2; ++j) mu.at(i, j) = rnd_elem(F, rng);
  return mu;
}

PairDual unit_pair(const FieldPtr& F, int w1, int w2, int i, int j) {
  PairDual e(F, w1, w2);
  e.at(i, j) = nf(F, 1);
  return e;
}

// Expands the level vector with generic polynomial arithmetic in a ring that
// carries the point coordinates and (x, y) together, then reads the
// coefficients back into the sphere ring.  Shares nothing with the double
// binomial loop of phi_expand.
SpherePoly expand_oracle(int n, const VkDual& mu, CharC chi) {
  const FieldPtr& F = mu.field();
  RingPtr rp = PolyRing::make(F, {"alpha", "beta", "alphabar", "betabar", "x", "y"});
  MultiPoly first = MultiPoly::var(rp, "alpha") * MultiPoly::var(rp, "y") -
                    MultiPoly::var(rp, "beta") * MultiPoly::var(rp, "x");
  MultiPoly second = -(MultiPoly::var(rp, "betabar") * MultiPoly::var(rp, "y")) -
                     MultiPoly::var(rp, "alphabar") * MultiPoly::var(rp, "x");
  MultiPoly prod = first.pow(n + chi.lambda) * second.pow(n - chi.lambda);
  RingPtr rs = PolyRing::sphere(F);
  MultiPoly acc(rs);
  for (const auto& [e, cf] : prod.terms()) {
    NFElem val = mu.value_on(e[4]) * cf;
    if (val.is_zero()) continue;
    acc += MultiPoly::monomial(rs, {e[0], e[1], e[2], e[3]}, val);
  }
  return SpherePoly{2 * chi.N, acc};
}

PhiVec lie_levelwise(const Mat2& X, const PhiVec& v) {
  PhiVec out(v.F, v.chi);
  for (const auto& [n, mu] : v.c) out.add(n, lie_act_dual(X, mu));
  return out;
}

NFElem ups_pair(const VkTensor& uid, const VkTensor& uc, const PairDual& mu,
                const PairDual& nu) {
  NFElem acc(mu.F);
  for (int i1 = 0; i1 <= mu.w1; ++i1)
    for (int j1 = 0; j1 <= mu.w2; ++j1)
      for (int i2 = 0; i2 <= mu.w1; ++i2)
        for (int j2 = 0; j2 <= mu.w2; ++j2)
          acc += uid.m.at(i1, i2) * uc.m.at(j1, j2) * mu.at(i1, j1) * nu.at(i2, j2);
  return acc;
}

// Monomial coefficients of a polynomial pair transported by the group: the
// contragredient of the functional-side action on each slot.
PairDual act_pair_poly(const Mat2& g, const PairDual& p) {
  PairDual out(p.F, p.w1, p.w2);
  MatrixNF a1 = dual_act_matrix(g.inverse(), p.w1).transpose();
  MatrixNF a2 = dual_act_matrix(conj_mat(g.inverse()), p.w2).transpose();
  out.m = a1 * p.m * a2.transpose();
  return out;
}

}  // namespace

TEST_CASE("model vectors expand through the point coordinates") {
  std::mt19937_64 rng(2026);
  CharC c20 = CharC::for_weights(2, 2);
  CHECK(c20.N == 2);
  CHECK(c20.lambda == 0);
  for (int n = 1; n <= 2; ++n) {
    VkDual mu = rnd_dual(Qi(), 2 * n, rng);
    CHECK(phi_expand(n, mu, c20) == expand_oracle(n, mu, c20));
  }
  CharC c31 = CharC::for_weights(4, 2);
  CHECK(c31.N == 3);
  CHECK(c31.lambda == 1);
  for (int n = 1; n <= 2; ++n) {
    VkDual mu = rnd_dual(Q8(), 2 * n, rng);
    CHECK(phi_expand(n, mu, c31) == expand_oracle(n, mu, c31));
  }
  CHECK_THROWS_AS(phi_expand(0, unit_dual(Qi(), 0, 0), c31), BadLevel);
  CHECK_THROWS_AS(phi_expand(2, unit_dual(Qi(), 2, 0), c31), WeightMismatch);
  CHECK_THROWS_AS(CharC::for_weights(3, 2), BadWeight);
  CHECK_THROWS_AS(CharC::for_weights(2, 0), BadWeight);
}

TEST_CASE("radial derivation on frozen examples") {
  const FieldPtr& F = Qi();
  RingPtr rs = PolyRing::sphere(F);
  MultiPoly aa = MultiPoly::var(rs, "alpha") * MultiPoly::var(rs, "alphabar");
  SpherePoly f{4, aa};
  MultiPoly want = aa * aa * Rational(12) - aa * Rational(8);
  CHECK(hatH_oracle(f, 2) == SpherePoly{4, want});

  SpherePoly one{2, MultiPoly::constant(rs, Rational(1))};
  MultiPoly want1 = aa * Rational(4) - MultiPoly::constant(rs, Rational(2));
  CHECK(hatH_oracle(one, 1) == SpherePoly{2, want1});

  std::mt19937_64 rng(7);
  CharC chi = CharC::for_weights(2, 2);
  SpherePoly g1 = phi_expand(1, rnd_dual(F, 2, rng), chi);
  SpherePoly g2 = phi_expand(2, rnd_dual(F, 4, rng), chi);
  CHECK(hatH_oracle(g1 + g2, 2) == hatH_oracle(g1, 2) + hatH_oracle(g2, 2));
}

TEST_CASE("level recurrence marches through the derivation oracle") {
  std::mt19937_64 rng(11);
  const FieldPtr& F = Qi();

  CharC c20 = CharC::for_weights(2, 2);
  PhiVec v(F, c20);
  v.add(1, unit_dual(F, 2, 1));
  PhiVec out = hatH_recurrence(v);
  CHECK(out.c.size() == 1);
  CHECK(out.coeff(2).value_on(2) == nf(F, -4));
  CHECK(out.coeff(2).value_on(0).is_zero());
  CHECK(out.coeff(2).value_on(4).is_zero());

  CharC c31 = CharC::for_weights(4, 2);
  PhiVec w(Q8(), c31);
  w.add(1, unit_dual(Q8(), 2, 0));
  PhiVec wo = hatH_recurrence(w);
  CHECK(wo.coeff(1).value_on(0) == nf(Q8(), 2));
  CHECK(wo.coeff(1).value_on(2).is_zero());

  for (auto [ki, kc] : {std::pair{4, 4}, {6, 2}}) {
    CharC chi = CharC::for_weights(ki, kc);
    PhiVec a = rnd_phivec(Q8(), chi, 5, rng);
    PhiVec b = rnd_phivec(Q8(), chi, 5, rng);
    PhiVec sum = hatH_recurrence(a + b);
    CHECK(sum == hatH_recurrence(a) + hatH_recurrence(b));
  }
}

TEST_CASE("sphere moments") {
  CHECK(moment_su2(0, 0, 0, 0) == Rational(1));
  CHECK(moment_su2(1, 0, 1, 0) == Rational(1, 2));
  CHECK(moment_su2(1, 1, 1, 1) == Rational(1, 6));
  CHECK(moment_su2(2, 0, 1, 0) == Rational(0));
  CHECK(moment_su2(0, 3, 0, 3) == Rational(1, 4));
  CHECK_THROWS_AS(moment_su2(-1, 0, 0, 0), BadInput);

  const FieldPtr& F = Qi();
  RingPtr rs = PolyRing::sphere(F);
  MultiPoly aa = MultiPoly::var(rs, "alpha") * MultiPoly::var(rs, "alphabar");
  MultiPoly bb = MultiPoly::var(rs, "beta") * MultiPoly::var(rs, "betabar");
  for (int m = 0; m <= 4; ++m)
    CHECK(moment_average(aa.pow(m)) == nf(F, 1, m + 1));
  CHECK(moment_average(MultiPoly::constant(rs, Rational(1)) - aa) == nf(F, 1, 2));
  MultiPoly tor = aa - bb;
  CHECK(moment_average(tor * tor) == nf(F, 1, 3));
}

TEST_CASE("restriction inverts the section level by level") {
  std::mt19937_64 rng(13);
  const FieldPtr& F = Q8();

  RhoSection r22 = rho_section_complex(F, 2, 2);
  CHECK(r22.inv_d.size() == 1);
  CHECK(r22.inv_d.at(0) == nf(F, 1));
  for (int j = 0; j <= 2; ++j) {
    PhiVec v(F, r22.chi);
    v.add(1, unit_dual(F, 2, j));
    CHECK(r22.rho(v).is_zero());
  }

  RhoSection r42 = rho_section_complex(F, 4, 2);
  CHECK(r42.inv_d.size() == 1);
  RhoSection r44 = rho_section_complex(F, 4, 4);
  CHECK(r44.inv_d.size() == 3);

  NFElem iF = imag_unit(F);
  Mat2 g1 = su2_point(nf(F, 3, 5), nf(F, 4, 5));
  Mat2 g2 = su2_point((nf(F, 1) + iF) * Rational(1, 2), (nf(F, 1) - iF) * Rational(1, 2));
  for (const Mat2& g : {g1, g2}) {
    PairDual mu = rnd_pair(F, 2, 0, rng);
    CHECK(kappa_act_phi(g, r42.section(mu)) == r42.section(kappa_act_pair(g, mu)));
    CHECK(dual_act(g, pair_to_level(1, mu, r42.chi)) ==
          pair_to_level(1, kappa_act_pair(g, mu), r42.chi));
  }
}

TEST_CASE("translation matches the substitution action") {
  std::mt19937_64 rng(17);
  const FieldPtr& F = Q8();
  CharC chi = CharC::for_weights(4, 2);
  PhiVec v = rnd_phivec(F, chi, 3, rng);

  NFElem a1 = nf(F, 3, 5), b1 = nf(F, 4, 5);
  CHECK(phi_expand(kappa_act_phi(su2_point(a1, b1), v)) ==
        sphere_translate(phi_expand(v), a1, b1));

  NFElem h = sqrt2(F) * Rational(1, 2);
  CHECK(phi_expand(kappa_act_phi(su2_point(h, h), v)) ==
        sphere_translate(phi_expand(v), h, h));

  SpherePoly f = phi_expand(v);
  NFElem a2 = h, b2 = -(h * imag_unit(F));
  NFElem a3 = a1 * a2 - b1 * conj_c(b2);
  NFElem b3 = a1 * b2 + b1 * conj_c(a2);
  CHECK(sphere_translate(sphere_translate(f, a2, b2), a1, b1) ==
        sphere_translate(f, a3, b3));

  CHECK_THROWS_AS(su2_point(nf(F, 1), nf(F, 1)), BadInput);
  Mat2 bad{nf(F, 2), NFElem(F), NFElem(F), nf(F, 1, 2)};
  CHECK_THROWS_AS(kappa_act_phi(bad, v), BadInput);
}

TEST_CASE("boundary of the section against its closed form") {
  std::mt19937_64 rng(19);
  const FieldPtr& F = Q8();

  VkDual t(F, 2);
  t.value_on(1) = nf(F, 1);
  VkDual up = pullback_dxdy(t);
  CHECK(up.weight() == 4);
  CHECK(up.value_on(2) == nf(F, 4));
  CHECK(up.value_on(0).is_zero());
  CHECK(up.value_on(1).is_zero());

  RhoSection r22 = rho_section_complex(F, 2, 2);
  PhiVec d22 = delta_s_complex(unit_pair(F, 0, 0, 0, 0), r22);
  CHECK(d22.c.size() == 1);
  CHECK(d22.coeff(1).value_on(1) == nf(F, -2));
  CHECK(d22.coeff(1).value_on(0).is_zero());
  CHECK(d22.coeff(1).value_on(2).is_zero());

  RhoSection r42 = rho_section_complex(F, 4, 2);
  for (int i = 0; i <= 2; ++i) {
    PhiVec d = delta_s_complex(unit_pair(F, 2, 0, i, 0), r42);
    CHECK(d.c.size() == 1);
    CHECK(d.coeff(2).value_on(i + 1) == nf(F, -2 * (i + 1) * (3 - i)));
  }

  PairDual mu = rnd_pair(F, 2, 0, rng), nu = rnd_pair(F, 2, 0, rng);
  NFElem two = nf(F, 2);
  CHECK(delta_s_complex(mu + nu * two, r42) ==
        delta_s_complex(mu, r42) + delta_s_complex(nu, r42) * two);

  RhoSection r44 = rho_section_complex(F, 4, 4);
  CHECK_NOTHROW(delta_s_complex(rnd_pair(F, 2, 2, rng), r44));
}

TEST_CASE("generator conjugations and operator brackets") {
  std::mt19937_64 rng(23);
  const FieldPtr& F = Q8();
  NFElem h = sqrt2(F) * Rational(1, 2), iF = imag_unit(F);
  Mat2 k1 = su2_point(h, h), k2 = su2_point(h, -(h * iF));

  CHECK(k1.inverse() * gen_Hhat(F) * k1 == gen_Wtilde(F));
  CHECK(k2.inverse() * gen_Hhat(F) * k2 == gen_Hc(F));
  CHECK(k1 * gen_Hhat(F) * k1.inverse() == -gen_Wtilde(F));
  CHECK(k2 * gen_Hhat(F) * k2.inverse() == -gen_Hc(F));
  CHECK(k1 * k1 == gen_W(F));

  CharC chi = CharC::for_weights(4, 2);
  PhiVec v = rnd_phivec(F, chi, 2, rng);
  auto lie = [&](CGen X, const PhiVec& u) { return lie_act_complex(X, u); };

  PhiVec lhs = lie(CGen::Hhat, lie(CGen::Wtilde, v)) -
               lie(CGen::Wtilde, lie(CGen::Hhat, v));
  CHECK(lhs == lie_levelwise(gen_W(F), v) * nf(F, 2));

  lhs = lie(CGen::Wtilde, lie(CGen::H, v)) - lie(CGen::H, lie(CGen::Wtilde, v));
  CHECK(lhs == lie_levelwise(gen_Hhat(F).scaled(iF), v) * nf(F, 2));

  lhs = lie(CGen::H, lie(CGen::Hhat, v)) - lie(CGen::Hhat, lie(CGen::H, v));
  CHECK(lhs == lie_levelwise(gen_Wtilde(F).scaled(iF), v) * nf(F, 2));
}

TEST_CASE("binomial intertwiner between companion models") {
  CHECK(psi_intertwine_check(2, 2, 5));
  CHECK(psi_intertwine_check(4, 2, 6));
  CHECK_FALSE(psi_intertwine_check(2, 2, 5, 1));
}

TEST_CASE("triangular transport solves the coboundary equation") {
  const FieldPtr& F = Q8();
  NFElem iF = imag_unit(F);

  PVReport rep = c2_and_pv_check(2, 2);
  CHECK(rep.c1_n1.at(0, 0) == nf(F, -1));
  CHECK(rep.c1_n2.at(0, 0) == -iF);
  CHECK(rep.c1_hath.at(0, 0).is_zero());
  CHECK(rep.c2_n1n2.at(0, 0).is_zero());
  CHECK(rep.c2_n1hath.at(0, 0) == rep.c1_n2.at(0, 0));
  CHECK(rep.c2_n2hath.at(0, 0) == -rep.c1_n1.at(0, 0));
  CHECK(rep.psi_unknowns == 3);
  CHECK(static_cast<int>(rep.psi.size()) == rep.psi_unknowns);

  CHECK_THROWS_AS(c2_and_pv_check(2, 2, true), PVCheckFailed);

  PVReport r44 = c2_and_pv_check(4, 4);
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j) {
      NFElem want = (i == 0 && j == 2) ? nf(F, -9) : NFElem(F);
      CHECK(r44.c1_n1.at(i, j) == want);
      CHECK(r44.c1_n2.at(i, j) == want * iF);
      CHECK(r44.c1_hath.at(i, j).is_zero());
      CHECK(r44.c2_n1n2.at(i, j).is_zero());
      CHECK(r44.c2_n1hath.at(i, j) == r44.c1_n2.at(i, j));
      CHECK(r44.c2_n2hath.at(i, j) == -r44.c1_n1.at(i, j));
    }
  CHECK(static_cast<int>(r44.psi.size()) == r44.psi_unknowns);
}

TEST_CASE("quarter rotation extension equals the direct cocycle") {
  const FieldPtr& F = Q8();
  NFElem h = sqrt2(F) * Rational(1, 2);
  Mat2 k1 = su2_point(h, h), k2 = su2_point(h, -(h * imag_unit(F)));

  RhoSection rs = rho_section_complex(F, 2, 2);
  PairDual e = unit_pair(F, 0, 0, 0, 0);
  PhiVec c1hat = delta_s_complex(e, rs) * nf(F, 2);
  PhiVec se = rs.section(e);

  PhiVec from_k1 = -kappa_act_phi(k1, c1hat);
  CHECK(from_k1 == kappa_act_phi(k1.inverse(), c1hat));
  PhiVec direct_wt = lie_act_complex(CGen::Wtilde, se) -
                     rs.section(lie_act_pair(gen_Wtilde(F), e));
  CHECK(from_k1 == direct_wt);

  PhiVec from_k2 = -kappa_act_phi(k2, c1hat);
  PhiVec direct_h = lie_act_complex(CGen::H, se) -
                    rs.section(lie_act_pair(gen_Hc(F), e));
  CHECK(from_k2 == direct_h);
}

TEST_CASE("triple cup at the transverse generator triple") {
  const FieldPtr& F = Q8();
  PhiTensor cup = cup3_complex();
  CHECK(cup.c.size() == 1);
  const PairDual& m = cup.c.at({1, 1});
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; q <= 2; ++q) {
      NFElem want(F);
      if (p == 1 && q == 1) want = nf(F, 16);
      if ((p == 0 && q == 2) || (p == 2 && q == 0)) want = nf(F, -32);
      CHECK(m.at(p, q) == want);
    }
}

TEST_CASE("invariant pairing tensor on polynomial pairs") {
  std::mt19937_64 rng(29);
  const FieldPtr& F = Q8();
  VkTensor uid = upsilon(F, 4), uc = upsilon(F, 2);
  NFElem h = sqrt2(F) * Rational(1, 2);
  Mat2 g1 = su2_point(nf(F, 3, 5), nf(F, 4, 5)), g2 = su2_point(h, h);
  PairDual mu = rnd_pair(F, 2, 0, rng), nu = rnd_pair(F, 2, 0, rng);
  NFElem base = ups_pair(uid, uc, mu, nu);
  for (const Mat2& g : {g1, g2})
    CHECK(ups_pair(uid, uc, act_pair_poly(g, mu), act_pair_poly(g, nu)) == base);
}
