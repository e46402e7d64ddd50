#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <random>
#include <utility>

#include "doctest.h"
#include "gkv/errors.hpp"
#include "gkv/gkreal.hpp"
#include "gkv/pkpoly.hpp"

using namespace gkv;

namespace {

const FieldPtr& Q8() { return NumberField::cyclotomic8(); }

NFElem nf(long num, long den = 1) { return NFElem(Q8(), Rational(num, den)); }

GKVecR fvec(int k, std::initializer_list<std::pair<int, NFElem>> terms) {
  GKVecR v(k);
  for (const auto& [n, c] : terms) v.add(n, c);
  return v;
}

NFElem rnd_elem(std::mt19937_64& rng) {
  NFElem a = nf(static_cast<long>(rng() % 9) - 4,
                static_cast<long>(rng() % 3) + 1);
  NFElem b = nf(static_cast<long>(rng() % 9) - 4,
                static_cast<long>(rng() % 3) + 1);
  return a + b * imag_unit(Q8());
}

GKVecR rnd_vec(int k, std::mt19937_64& rng) {
  GKVecR v(k);
  for (int n = -4; n <= 4; ++n)
    if (rng() % 2) v.add(n, rnd_elem(rng));
  return v;
}

VkDual rnd_dual(int w, std::mt19937_64& rng) {
  VkDual mu(Q8(), w);
  for (int j = 0; j <= w; ++j) mu.value_on(j) = rnd_elem(rng);
  return mu;
}

// Laurent polynomials in E = e^(2 i theta), the oracle's coordinate on the
// circle.  f_n corresponds to E^n once the common factor y^(k/2) is dropped.
struct Laurent {
  std::map<int, NFElem> c;

  void add(int n, const NFElem& v) {
    if (v.is_zero()) return;
    auto [it, fresh] = c.emplace(n, v);
    if (!fresh) {
      it->second += v;
      if (it->second.is_zero()) c.erase(it);
    }
  }
  Laurent mul(const Laurent& o) const {
    Laurent r;
    for (const auto& [n1, v1] : c)
      for (const auto& [n2, v2] : o.c) r.add(n1 + n2, v1 * v2);
    return r;
  }
  Laurent scaled(const NFElem& s) const {
    Laurent r;
    for (const auto& [n, v] : c) r.add(n, v * s);
    return r;
  }
  Laurent operator+(const Laurent& o) const {
    Laurent r = *this;
    for (const auto& [n, v] : o.c) r.add(n, v);
    return r;
  }
};

Laurent to_laurent(const GKVecR& v) {
  Laurent L;
  for (const auto& [n, c] : v.terms()) L.add(n, c);
  return L;
}

GKVecR from_laurent(int k, const Laurent& L) {
  GKVecR v(k);
  for (const auto& [n, c] : L.c) v.add(n, c);
  return v;
}

Laurent dtheta(const Laurent& L) {
  Laurent r;
  NFElem i = imag_unit(Q8());
  for (const auto& [n, v] : L.c) r.add(n, v * i * Rational(2 * n));
  return r;
}

// The generators as first-order differential operators on smooth vectors of
// weight k, restricted to the circle:
//   Hhat = k cos(2 theta) + sin(2 theta) d/dtheta
//   Wtilde = k sin(2 theta) - cos(2 theta) d/dtheta
//   W = d/dtheta
// evaluated through Laurent arithmetic in E.
GKVecR oracle_act(RealGen X, const GKVecR& v) {
  int k = v.weight();
  NFElem i = imag_unit(Q8());
  Laurent L = to_laurent(v);
  Laurent cos2, sin2;
  cos2.add(1, nf(1, 2));
  cos2.add(-1, nf(1, 2));
  sin2.add(1, -(i * Rational(1, 2)));
  sin2.add(-1, i * Rational(1, 2));
  switch (X) {
    case RealGen::Hhat:
      return from_laurent(
          k, cos2.scaled(nf(k)).mul(L) + sin2.mul(dtheta(L)));
    case RealGen::W:
      return from_laurent(k, dtheta(L));
    case RealGen::Wtilde:
      return from_laurent(
          k, sin2.scaled(nf(k)).mul(L) + cos2.scaled(nf(-1)).mul(dtheta(L)));
    default:
      return GKVecR(k);
  }
}

// (k-1)((-i)^((k-2)/2+m) f_(k/2) + sign * i^((k-2)/2+m) f_(-k/2)).
GKVecR closed_form_c1(int k, int sign, int m) {
  NFElem i = imag_unit(Q8());
  int e = (((k - 2) / 2 + m) % 4 + 4) % 4;
  NFElem ip = nf(1), imp = nf(1);
  for (int t = 0; t < e; ++t) {
    ip *= i;
    imp *= -i;
  }
  GKVecR r(k);
  r.add(k / 2, imp * Rational(k - 1));
  r.add(-k / 2, ip * Rational((k - 1) * sign));
  return r;
}

}  // namespace

TEST_CASE("generator action matches the differential operator model") {
  std::mt19937_64 rng(20240817);
  for (int k : {2, 4, 8})
    for (int rep = 0; rep < 8; ++rep) {
      GKVecR v = rnd_vec(k, rng);
      for (RealGen X : {RealGen::Hhat, RealGen::W, RealGen::Wtilde})
        CHECK(lie_act_principal(X, v) == oracle_act(X, v));
    }

  CHECK(lie_act_principal(RealGen::W, GKVecR::basis(2, 0)).is_zero());
  CHECK(lie_act_principal(RealGen::W, GKVecR::basis(6, 0)).is_zero());
  CHECK(lie_act_principal(RealGen::Hhat, GKVecR::basis(2, 0)) ==
        fvec(2, {{1, nf(1)}, {-1, nf(1)}}));
  CHECK(lie_act_principal(RealGen::Hhat, GKVecR::basis(4, 1)) ==
        fvec(4, {{2, nf(3)}, {0, nf(1)}}));
  CHECK_THROWS_AS(lie_act_principal(RealGen::Hc, GKVecR::basis(4, 0)),
                  BadGenerator);
}

TEST_CASE("bracket of Hhat and Wtilde acts as twice W") {
  std::mt19937_64 rng(20240818);
  for (int k : {2, 4, 6})
    for (int rep = 0; rep < 6; ++rep) {
      GKVecR v = rnd_vec(k, rng);
      GKVecR lhs =
          lie_act_principal(RealGen::Hhat,
                            lie_act_principal(RealGen::Wtilde, v)) -
          lie_act_principal(RealGen::Wtilde,
                            lie_act_principal(RealGen::Hhat, v));
      GKVecR rhs = lie_act_principal(RealGen::W, v);
      rhs *= nf(2);
      CHECK(lhs == rhs);
    }
}

TEST_CASE("restriction and section are mutually inverse and equivariant") {
  std::mt19937_64 rng(20240819);
  for (int k : {4, 6}) {
    int w = k - 2;
    for (int rep = 0; rep < 6; ++rep) {
      VkDual mu = rnd_dual(w, rng);
      CHECK(rho_real(section_real(mu, k, +1), +1) == mu);
    }
    for (int n = -w / 2; n <= w / 2; ++n)
      CHECK(section_real(rho_real(GKVecR::basis(k, n), +1), k, +1) ==
            GKVecR::basis(k, n));
    CHECK(rho_real(GKVecR::basis(k, k / 2), +1).is_zero());
    CHECK(rho_real(GKVecR::basis(k, -k / 2), +1).is_zero());
    CHECK(rho_real(GKVecR::basis(k, k / 2 + 1), +1).is_zero());
    CHECK(section_real(pbasis(Q8(), w).p_dual(w / 2), k, +1) ==
          GKVecR::basis(k, 0));
  }

  // Rotation equivariance at the rational circle point (3/5, 4/5): the dual
  // side goes through the polynomial action, an independent path.
  NFElem c = nf(3, 5), s = nf(4, 5);
  Mat2 rot{c, s, -s, c};
  for (int k : {4, 6}) {
    for (int rep = 0; rep < 4; ++rep) {
      GKVecR v = rnd_vec(k, rng);
      CHECK(rho_real(kappa_act_real(v, c, s), +1) ==
            dual_act(rot, rho_real(v, +1)));
    }
    for (int rep = 0; rep < 4; ++rep) {
      VkDual mu = rnd_dual(k - 2, rng);
      CHECK(section_real(dual_act(rot, mu), k, +1) ==
            kappa_act_real(section_real(mu, k, +1), c, s));
    }
  }
  CHECK_THROWS_AS(kappa_act_real(GKVecR::basis(4, 1), nf(1), nf(1)), BadInput);

  // Weyl equivariance in both sign models.
  for (int sign : {+1, -1})
    for (int rep = 0; rep < 4; ++rep) {
      GKVecR v = rnd_vec(4, rng);
      CHECK(rho_real(weyl_act_real(v, sign), sign) ==
            weyl_act_dual(rho_real(v, sign), sign));
    }

  CHECK_THROWS_AS(section_real(rnd_dual(2, rng), 2, +1), WeightMismatch);
}

TEST_CASE("first principles cocycle equals its closed form") {
  for (int k : {2, 4, 6, 8})
    for (int sign : {+1, -1}) {
      HomVD_R c = cocycle_value_real(k, sign, RealGen::Hhat);
      int w = k - 2;
      for (int m = -w / 2; m <= w / 2; ++m)
        CHECK(c.val.at(m) == closed_form_c1(k, sign, m));
      CHECK_NOTHROW(cocycle_c1_real(k, sign));
    }

  CHECK(cocycle_c1_real(2, +1).val.at(0) == fvec(2, {{1, nf(1)}, {-1, nf(1)}}));
  CHECK(cocycle_c1_real(4, +1).val.at(1) ==
        fvec(4, {{2, nf(-3)}, {-2, nf(-3)}}));
  CHECK(cocycle_c1_real(4, -1).val.at(1) ==
        fvec(4, {{2, nf(-3)}, {-2, nf(3)}}));
}

TEST_CASE("cocycle values land in the discrete part") {
  for (int k : {2, 4, 6, 8})
    for (int sign : {+1, -1})
      for (RealGen X : {RealGen::Hhat, RealGen::Wtilde}) {
        HomVD_R c = cocycle_value_real(k, sign, X);
        for (const auto& [m, v] : c.val)
          for (const auto& [n, coeff] : v.terms()) {
            CHECK(std::abs(n) >= k / 2);
            CHECK_FALSE(coeff.is_zero());
          }
      }
}

TEST_CASE("the cocycle at Hhat extends to the second generator") {
  CHECK(cocycle_check_real(cocycle_c1_real(2, +1)));
  CHECK(cocycle_check_real(cocycle_c1_real(6, -1)));

  HomVD_R bad = cocycle_c1_real(4, +1);
  bad.val.at(1).add(3, nf(1));
  CHECK_FALSE(cocycle_check_real(bad));
}

TEST_CASE("cup product of the one sided cocycles") {
  NFElem i = imag_unit(Q8());

  GKTensorR c2 = cup2_real(2);
  CHECK(c2.c.size() == 2);
  CHECK(c2.coeff(1, -1) == i * Rational(-2));
  CHECK(c2.coeff(-1, 1) == i * Rational(-2));

  GKTensorR c4 = cup2_real(4);
  CHECK(c4.c.size() == 2);
  CHECK(c4.coeff(2, -2) == i * Rational(72));
  CHECK(c4.coeff(-2, 2) == i * Rational(72));

  GKTensorR c6 = cup2_real(6);
  CHECK(c6.c.size() == 2);
  CHECK(c6.coeff(3, -3) == i * Rational(-800));
  CHECK(c6.coeff(-3, 3) == i * Rational(-800));
}
