#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <vector>

#include "doctest.h"
#include "gkv/errors.hpp"
#include "gkv/quat.hpp"
#include "gkv/vkdual.hpp"

using namespace gkv;

namespace {

QuatAlgPtr hamilton() {
  auto Q = NumberField::rationals();
  return QuaternionAlgebra::make(Q, NFElem(Q, Rational(-1)),
                                 NFElem(Q, Rational(-1)));
}

QuatAlgPtr alg_minus1_minus11() {
  auto Q = NumberField::rationals();
  return QuaternionAlgebra::make(Q, NFElem(Q, Rational(-1)),
                                 NFElem(Q, Rational(-11)));
}

QuatElem rnd_quat(const QuatAlgPtr& B, std::mt19937_64& rng,
                  bool trace_zero = false) {
  const FieldPtr& F = B->base_field;
  std::array<NFElem, 4> x;
  for (int n = 0; n < 4; ++n)
    x[n] = NFElem(F, Rational(static_cast<long>(rng() % 9) - 4,
                              static_cast<long>(rng() % 3) + 1));
  if (trace_zero) x[0] = NFElem(F);
  return QuatElem(B, x);
}

QuatElem rnd_invertible(const QuatAlgPtr& B, std::mt19937_64& rng) {
  for (;;) {
    QuatElem q = rnd_quat(B, rng);
    if (!q.norm().is_zero()) return q;
  }
}

// Conjugation g . t . g^-1 applied slot by slot.
SymTensor conj_tensor(const QuatElem& g, const SymTensor& t) {
  const QuatAlgPtr& B = t.algebra();
  QuatElem gi = g.inv();
  std::array<SymTensor, 3> im = {
      SymTensor::from_quat(g * QuatElem::unit_i(B) * gi),
      SymTensor::from_quat(g * QuatElem::unit_j(B) * gi),
      SymTensor::from_quat(g * QuatElem::unit_k(B) * gi)};
  SymTensor acc(B, t.degree());
  for (const auto& [e, c] : t.terms()) {
    SymTensor piece = SymTensor::monomial(B, {0, 0, 0}, c);
    for (int letter = 0; letter < 3; ++letter)
      for (int s = 0; s < e[letter]; ++s) piece = mul(piece, im[letter]);
    acc += piece;
  }
  return acc;
}

// Independent pairing on Sym^n: (1/n!) sum over slot matchings.  The letters
// are orthogonal, so only equal exponent triples survive, with e0! e1! e2!
// matchings each.
NFElem sym_pairing(const SymTensor& v, const SymTensor& w) {
  const QuatAlgPtr& B = v.algebra();
  const FieldPtr& F = B->base_field;
  QuatElem ui = QuatElem::unit_i(B), uj = QuatElem::unit_j(B),
           uk = QuatElem::unit_k(B);
  NFElem pii = trace_pairing(ui, ui), pjj = trace_pairing(uj, uj),
         pkk = trace_pairing(uk, uk);
  int n = v.degree();
  NFElem acc(F);
  for (const auto& [e, c] : v.terms()) {
    NFElem d = w.coeff(e);
    if (d.is_zero()) continue;
    Rational mult = Rational::factorial(e[0]) * Rational::factorial(e[1]) *
                    Rational::factorial(e[2]) / Rational::factorial(n);
    NFElem val(F, mult);
    for (int s = 0; s < e[0]; ++s) val *= pii;
    for (int s = 0; s < e[1]; ++s) val *= pjj;
    for (int s = 0; s < e[2]; ++s) val *= pkk;
    acc += c * d * val;
  }
  return acc;
}

SymTensor rnd_harmonic(const QuatAlgPtr& B, int k, std::mt19937_64& rng) {
  auto basis = vk_basis(B, k);
  SymTensor acc(B, k / 2);
  for (const auto& v : basis) {
    SymTensor piece = v.t;
    piece *= NFElem(B->base_field,
                    Rational(static_cast<long>(rng() % 7) - 3));
    acc += piece;
  }
  return acc;
}

}  // namespace

TEST_CASE("multiplication table and norm") {
  auto B = alg_minus1_minus11();
  const NFElem& a = B->a;
  const NFElem& b = B->b;
  QuatElem one = QuatElem::one(B), i = QuatElem::unit_i(B),
           j = QuatElem::unit_j(B), k = QuatElem::unit_k(B);
  CHECK(i * i == a * one);
  CHECK(j * j == b * one);
  CHECK(i * j == k);
  CHECK(j * i == -k);
  CHECK(k * k == -(a * b) * one);
  CHECK(k == i * j);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    QuatElem x = rnd_quat(B, rng), y = rnd_quat(B, rng);
    CHECK((x * y).norm() == x.norm() * y.norm());
    CHECK((x * y).conj() == y.conj() * x.conj());
    if (!x.norm().is_zero()) CHECK(x * x.inv() == one);
  }
}

TEST_CASE("trace pairing on the standard basis") {
  auto B = alg_minus1_minus11();
  const NFElem& a = B->a;
  const NFElem& b = B->b;
  QuatElem i = QuatElem::unit_i(B), j = QuatElem::unit_j(B),
           k = QuatElem::unit_k(B);
  CHECK(trace_pairing(i, j).is_zero());
  CHECK(trace_pairing(i, k).is_zero());
  CHECK(trace_pairing(j, k).is_zero());
  CHECK(trace_pairing(i, i) == Rational(-2) * a);
  CHECK(trace_pairing(j, j) == Rational(-2) * b);
  CHECK(trace_pairing(k, k) == Rational(2) * (a * b));
  CHECK(trace_pairing(i, j) == trace_pairing(j, i));

  auto B2 = hamilton();
  CHECK_THROWS_AS(trace_pairing(i, QuatElem::unit_i(B2)), AlgebraMismatch);
}

TEST_CASE("contraction of low-degree tensors") {
  auto B = alg_minus1_minus11();
  const FieldPtr& F = B->base_field;
  const NFElem& a = B->a;
  NFElem one(F, Rational(1));

  SymTensor ii = SymTensor::monomial(B, {2, 0, 0}, one);
  SymTensor d = delta_k(ii);
  CHECK(d.degree() == 0);
  CHECK(d.coeff({0, 0, 0}) == Rational(-2) * a);

  SymTensor iij = SymTensor::monomial(B, {2, 1, 0}, one);
  SymTensor d2 = delta_k(iij);
  CHECK(d2 == SymTensor::monomial(B, {0, 1, 0}, Rational(-2) * a));

  // The designated degree-2 invariant is harmonic.
  SymTensor v4 = SymTensor::monomial(B, {0, 2, 0}, one);
  v4.add_term({0, 0, 2}, -B->a.inv());
  v4.add_term({2, 0, 0}, Rational(-2) * B->b * B->a.inv());
  CHECK(delta_k(v4).is_zero());

  CHECK_THROWS_AS(delta_k(SymTensor::monomial(B, {1, 0, 0}, one)),
                  DegreeTooSmall);
}

TEST_CASE("harmonic kernel has the polynomial-model dimension") {
  for (const auto& B : {hamilton(), alg_minus1_minus11()}) {
    for (int k = 0; k <= 12; k += 2) {
      auto basis = vk_basis(B, k);
      CHECK(static_cast<int>(basis.size()) == k + 1);
      for (const auto& v : basis) {
        if (v.t.degree() >= 2) CHECK(delta_k(v.t).is_zero());
      }
    }
  }
  CHECK_THROWS_AS(vk_basis(hamilton(), 5), BadWeight);
}

TEST_CASE("matrix model of the algebra") {
  auto B = alg_minus1_minus11();
  auto L = NumberField::cyclotomic8();
  NFElem sa = imag_unit(L);  // sqrt(-1)
  NFElem b = promote(B->b, L);

  Mat2 mi = iota_embed(QuatElem::unit_i(B), sa);
  CHECK(mi == Mat2::diag(sa, -sa));
  Mat2 mj = iota_embed(QuatElem::unit_j(B), sa);
  CHECK(mj.a.is_zero());
  CHECK(mj.b == b);
  CHECK(mj.c == NFElem(L, Rational(1)));
  CHECK(mj.d.is_zero());
  CHECK(iota_embed(QuatElem::one(B), sa) == Mat2::identity(L));

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    QuatElem x = rnd_quat(B, rng), y = rnd_quat(B, rng);
    Mat2 mx = iota_embed(x, sa), my = iota_embed(y, sa);
    CHECK(iota_embed(x * y, sa) == mx * my);
    CHECK(iota_embed(x + y, sa) == mx + my);
    CHECK(mx.trace() == promote(x.trace(), L));
    CHECK(mx.det() == promote(x.norm(), L));
  }

  // No square root of -11 is designated in this field.
  auto Bswap = QuaternionAlgebra::make(B->base_field, B->b, B->a);
  CHECK_THROWS_AS(iota_embed(QuatElem::unit_i(Bswap), sa), MissingRoot);
}

TEST_CASE("polynomial model sends the distinguished slots to pure powers") {
  auto L = NumberField::cyclotomic8();
  NFElem one(L, Rational(1)), zero(L);
  Mat2 b1{zero, -one, zero, zero};
  Mat2 b2{zero, zero, one, zero};
  CHECK(kappa_factor(b1) == PkPoly::monomial(L, 2, 2, one));
  CHECK(kappa_factor(b2) == PkPoly::monomial(L, 2, 0, one));
  for (int k : {4, 6}) {
    PkPoly px = PkPoly::monomial(L, 0, 0, one);
    PkPoly py = px;
    for (int s = 0; s < k / 2; ++s) {
      px = mul(px, kappa_factor(b1));
      py = mul(py, kappa_factor(b2));
    }
    CHECK(px == PkPoly::monomial(L, k, k, one));
    CHECK(py == PkPoly::monomial(L, k, 0, one));
  }
}

TEST_CASE("polynomial model intertwines conjugation with the group action") {
  auto B = hamilton();
  auto L = NumberField::cyclotomic8();
  NFElem sa = imag_unit(L);
  std::mt19937_64 rng(23);

  // g = 1 + i first, then random invertible quaternions.
  std::vector<QuatElem> gs;
  {
    QuatElem g = QuatElem::one(B) + QuatElem::unit_i(B);
    gs.push_back(g);
  }
  for (int trial = 0; trial < 5; ++trial) gs.push_back(rnd_invertible(B, rng));

  for (int k : {4, 6}) {
    SymTensor v = rnd_harmonic(B, k, rng);
    VkElem vk = VkElem::make(v);
    for (const QuatElem& g : gs) {
      VkElem moved = VkElem::make(conj_tensor(g, v));
      CHECK(kappa_embed(moved, sa) ==
            act_gl2(iota_embed(g, sa), kappa_embed(vk, sa)));
    }
  }
}

TEST_CASE("polynomial model preserves the pairing") {
  auto B = hamilton();
  auto L = NumberField::cyclotomic8();
  NFElem sa = imag_unit(L);
  std::mt19937_64 rng(29);
  for (int k : {4, 6}) {
    for (int trial = 0; trial < 5; ++trial) {
      SymTensor v = rnd_harmonic(B, k, rng), w = rnd_harmonic(B, k, rng);
      NFElem lhs = pairing_pk(kappa_embed(VkElem::make(v), sa),
                              kappa_embed(VkElem::make(w), sa));
      CHECK(lhs == promote(sym_pairing(v, w), L));
    }
  }
}

TEST_CASE("circle evaluation of the low invariants") {
  auto B = alg_minus1_minus11();
  auto L = NumberField::cyclotomic8();
  NFElem sa = imag_unit(L);
  NFElem b = promote(B->b, L);

  VkElem v2 = invariant_vector(B, 2);
  LaurentU f2 = torus_eval(v2, sa);
  CHECK(f2.is_constant());
  CHECK(f2.coeff(0) == sa + sa);

  VkElem v4 = invariant_vector(B, 4);
  // Up to the leading-one normalization, v4 is (j j) - (1/a)(k k) - 2(b/a)(i i).
  {
    const FieldPtr& F = B->base_field;
    SymTensor ref = SymTensor::monomial(B, {0, 2, 0}, NFElem(F, Rational(1)));
    ref.add_term({0, 0, 2}, -B->a.inv());
    ref.add_term({2, 0, 0}, Rational(-2) * B->b * B->a.inv());
    NFElem lead = ref.terms().begin()->second;
    ref *= lead.inv();
    CHECK(v4.t == ref);
  }
  LaurentU f4 = torus_eval(v4, sa);
  CHECK(f4.is_constant());
  // The normalization scales the stated constant -4b by -a.
  CHECK(f4.coeff(0) == Rational(4) * promote(B->a, L) * b);

  // A non-harmonic tensor sees the circle: (j j) has genuine u-dependence.
  SymTensor jj = SymTensor::monomial(B, {0, 2, 0},
                                     NFElem(B->base_field, Rational(1)));
  LaurentU fjj = torus_eval(jj, sa);
  CHECK(!fjj.is_constant());
  CHECK(!fjj.coeff(2).is_zero());
  CHECK(!fjj.coeff(-2).is_zero());
}

TEST_CASE("invariant tensors for all small weights") {
  auto L = NumberField::cyclotomic8();
  NFElem sa = imag_unit(L);
  for (const auto& B : {hamilton(), alg_minus1_minus11()}) {
    for (int k = 2; k <= 12; k += 2) {
      VkElem v = invariant_vector(B, k);
      if (v.t.degree() >= 2) CHECK(delta_k(v.t).is_zero());
      CHECK(is_norm_one_invariant(v));
      LaurentU f = torus_eval(v, sa);
      CHECK(f.is_constant());
      // The constant lies in (sqrt a)^(k/2) times the base field.
      NFElem scaled = f.coeff(0);
      for (int s = 0; s < k / 2; ++s) scaled /= sa;
      CHECK(scaled.is_rational());
      // The fixed subspace of the kernel is exactly the line through v.
      auto fixed = torus_invariants(B, k);
      REQUIRE(fixed.size() == 1);
    }
  }
  // Most kernel basis vectors are not circle-invariant.
  auto B = hamilton();
  bool found_non_invariant = false;
  for (const auto& w : vk_basis(B, 4))
    if (!is_norm_one_invariant(w)) found_non_invariant = true;
  CHECK(found_non_invariant);
}

TEST_CASE("invariant of weight eight over the rational quaternions") {
  auto B = hamilton();
  auto L = NumberField::cyclotomic8();
  NFElem sa = imag_unit(L);
  VkElem v8 = invariant_vector(B, 8);
  CHECK(v8.t.degree() == 4);
  CHECK(delta_k(v8.t).is_zero());
  LaurentU f = torus_eval(v8, sa);
  CHECK(f.is_constant());
  // (sqrt a)^4 = 1 here, so the constant itself is rational.
  CHECK(f.coeff(0).is_rational());
}
