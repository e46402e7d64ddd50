#include "gkv/gkcomplex.hpp"

#include <array>
#include <cstdlib>
#include <utility>
#include <vector>

#include "gkv/errors.hpp"

namespace gkv {

void PhiVec::add(int n, const VkDual& mu) {
  if (n < std::abs(chi.lambda)) throw BadLevel("level below the character bound");
  if (mu.weight() != 2 * n) throw WeightMismatch("level functional of the wrong weight");
  if (mu.is_zero()) return;
  auto it = c.find(n);
  if (it == c.end()) {
    c.emplace(n, mu);
    return;
  }
  it->second += mu;
  if (it->second.is_zero()) c.erase(it);
}

VkDual PhiVec::coeff(int n) const {
  auto it = c.find(n);
  if (it != c.end()) return it->second;
  return VkDual(F, n >= 0 ? 2 * n : 0);
}

PhiVec PhiVec::operator-() const {
  PhiVec r = *this;
  for (auto& [n, mu] : r.c) mu = -mu;
  return r;
}

PhiVec& PhiVec::operator+=(const PhiVec& o) {
  if (!F) {
    *this = o;
    return *this;
  }
  if (!o.F || o.c.empty()) return *this;
  if (chi != o.chi) throw BadInput("level sums for different characters");
  for (const auto& [n, mu] : o.c) add(n, mu);
  return *this;
}

PhiVec& PhiVec::operator-=(const PhiVec& o) { return *this += (-o); }

PhiVec& PhiVec::operator*=(const NFElem& s) {
  if (s.is_zero()) {
    c.clear();
    return *this;
  }
  for (auto& [n, mu] : c) mu = mu * s;
  return *this;
}

bool operator==(const PhiVec& a, const PhiVec& b) {
  if (a.c.empty() && b.c.empty()) return true;
  if (a.chi != b.chi) return false;
  return a.c == b.c;
}

PhiVec hatH_recurrence(const PhiVec& v) {
  PhiVec out(v.F, v.chi);
  if (v.c.empty()) return out;
  const int N = v.chi.N, lam = v.chi.lambda;
  for (const auto& [n, mu] : v.c) {
    const Rational pre0 = Rational(lam) * Rational(N - 1);
    if (!pre0.is_zero()) {
      const Rational scale = pre0 / (Rational(n) * Rational(n + 1));
      VkDual nu(v.F, 2 * n);
      for (int j = 0; j <= 2 * n; ++j) {
        if (2 * j == 2 * n) continue;
        nu.value_on(j) = mu.value_on(j) * (scale * Rational(2 * n - 2 * j));
      }
      out.add(n, nu);
    }
    {
      const Rational scale =
          Rational(-2 * (N + n)) / (Rational(n + 1) * Rational(2 * n + 1));
      VkDual nu(v.F, 2 * (n + 1));
      for (int j = 1; j <= 2 * n + 1; ++j)
        nu.value_on(j) =
            mu.value_on(j - 1) * (scale * Rational(static_cast<long>(j) * (2 * n + 2 - j)));
      out.add(n + 1, nu);
    }
    const Rational prem = Rational(n + lam) * Rational(n - lam) * Rational(n - N + 1);
    if (!prem.is_zero()) {
      const Rational scale = prem * Rational(2) / (Rational(n) * Rational(2 * n + 1));
      VkDual nu(v.F, 2 * (n - 1));
      for (int j = 0; j <= 2 * n - 2; ++j) nu.value_on(j) = mu.value_on(j + 1) * scale;
      out.add(n - 1, nu);
    }
  }
  if (!(hatH_oracle(phi_expand(v), v.chi.N) == phi_expand(out)))
    throw FormulaMismatch("level recurrence disagrees with the derivation oracle");
  return out;
}

PairDual::PairDual(FieldPtr F_, int w1_, int w2_)
    : F(std::move(F_)), w1(w1_), w2(w2_), m(F, w1 + 1, w2 + 1) {}

PairDual PairDual::pure(const VkDual& a, const VkDual& b) {
  PairDual out(a.field(), a.weight(), b.weight());
  for (int i = 0; i <= out.w1; ++i) {
    if (a.value_on(i).is_zero()) continue;
    for (int j = 0; j <= out.w2; ++j) out.m.at(i, j) = a.value_on(i) * b.value_on(j);
  }
  return out;
}

bool PairDual::is_zero() const {
  for (int i = 0; i <= w1; ++i)
    for (int j = 0; j <= w2; ++j)
      if (!m.at(i, j).is_zero()) return false;
  return true;
}

PairDual PairDual::operator-() const {
  PairDual r = *this;
  if (w1 >= 0) r.m = m.scaled(NFElem(F, Rational(-1)));
  return r;
}

PairDual& PairDual::operator+=(const PairDual& o) {
  if (w1 < 0) {
    *this = o;
    return *this;
  }
  if (o.w1 < 0) return *this;
  if (w1 != o.w1 || w2 != o.w2) throw BadInput("pair functionals of different weights");
  m = m + o.m;
  return *this;
}

PairDual& PairDual::operator-=(const PairDual& o) { return *this += (-o); }

PairDual& PairDual::operator*=(const NFElem& s) {
  if (w1 >= 0) m = m.scaled(s);
  return *this;
}

bool operator==(const PairDual& a, const PairDual& b) {
  if (a.is_zero() && b.is_zero()) return true;
  if (a.w1 != b.w1 || a.w2 != b.w2) return false;
  for (int i = 0; i <= a.w1; ++i)
    for (int j = 0; j <= a.w2; ++j)
      if (!(a.m.at(i, j) == b.m.at(i, j))) return false;
  return true;
}

PairDual kappa_act_pair(const Mat2& g, const PairDual& mu) {
  PairDual out(mu.F, mu.w1, mu.w2);
  MatrixNF d1 = dual_act_matrix(g, mu.w1);
  MatrixNF d2 = dual_act_matrix(conj_mat(g), mu.w2);
  out.m = d1 * mu.m * d2.transpose();
  return out;
}

PairDual lie_act_pair(const Mat2& X, const PairDual& mu) {
  PairDual out(mu.F, mu.w1, mu.w2);
  for (int j = 0; j <= mu.w2; ++j) {
    VkDual col(mu.F, mu.w1);
    for (int i = 0; i <= mu.w1; ++i) col.value_on(i) = mu.at(i, j);
    VkDual acted = lie_act_dual(X, col);
    for (int i = 0; i <= mu.w1; ++i) out.at(i, j) += acted.value_on(i);
  }
  Mat2 Xc = conj_mat(X);
  for (int i = 0; i <= mu.w1; ++i) {
    VkDual row(mu.F, mu.w2);
    for (int j = 0; j <= mu.w2; ++j) row.value_on(j) = mu.at(i, j);
    VkDual acted = lie_act_dual(Xc, row);
    for (int j = 0; j <= mu.w2; ++j) out.at(i, j) += acted.value_on(j);
  }
  return out;
}

VkDual pair_to_level(int n, const PairDual& mu, CharC chi) {
  const int N = chi.N, lam = chi.lambda;
  if (n < std::abs(lam) || n > N - 2) throw BadLevel("no isotypic piece at this level");
  const int r1 = n + lam, r2 = n - lam, r3 = N - 2 - n;
  if (mu.w1 != r1 + r3 || mu.w2 != r2 + r3)
    throw WeightMismatch("pair functional does not match the character weights");
  PkPoly P(mu.F, r1 + r2);
  for (int a1 = 0; a1 <= r1; ++a1)
    for (int b1 = 0; b1 <= r2; ++b1)
      for (int c1 = 0; c1 <= r3; ++c1) {
        const NFElem& v = mu.at(a1 + c1, r2 - b1 + c1);
        if (v.is_zero()) continue;
        Rational cf = Rational::binom(r1, a1) * Rational::binom(r2, b1) *
                      Rational::binom(r3, c1);
        if ((r1 - a1 + r2) % 2 != 0) cf = -cf;
        P.coeff(r1 + r2 - a1 - b1) += v * cf;
      }
  return dual_iso_inv(P);
}

VkDual pullback_dxdy(const VkDual& t) {
  const int w = t.weight();
  VkDual out(t.field(), w + 2);
  for (int j = 1; j <= w + 1; ++j)
    out.value_on(j) = t.value_on(j - 1) * Rational(static_cast<long>(j) * (w + 2 - j));
  return out;
}

PairDual RhoSection::rho(const PhiVec& f) const {
  PairDual out(F, k_id - 2, k_c - 2);
  if (f.is_zero()) return out;
  if (f.chi != chi) throw BadInput("restriction of a vector of the wrong character");
  SpherePoly sp = phi_expand(f);
  const RingPtr& R = sp.p.ring();
  for (int i = 0; i <= k_id - 2; ++i)
    for (int j = 0; j <= k_c - 2; ++j) {
      Rational sgn((i + j) % 2 == 0 ? 1 : -1);
      MultiPoly mon =
          MultiPoly::monomial(R, {k_c - 2 - j, j, k_id - 2 - i, i}, NFElem(F, sgn));
      out.at(i, j) = moment_average(sp.p * mon);
    }
  return out;
}

PhiVec RhoSection::section(const PairDual& mu) const {
  PhiVec out(F, chi);
  if (mu.w1 < 0 || mu.is_zero()) return out;
  if (mu.w1 != k_id - 2 || mu.w2 != k_c - 2)
    throw WeightMismatch("section argument does not match the pair weights");
  for (const auto& [n, dinv] : inv_d) out.add(n, pair_to_level(n, mu, chi) * dinv);
  return out;
}

RhoSection rho_section_complex(const FieldPtr& F, int k_id, int k_c) {
  CharC chi = CharC::for_weights(k_id, k_c);
  RhoSection rs{F, k_id, k_c, chi, {}};
  const int w1 = k_id - 2, w2 = k_c - 2, dim = (w1 + 1) * (w2 + 1);
  std::map<int, MatrixNF> per_level;
  for (int n = std::abs(chi.lambda); n <= chi.N - 2; ++n) {
    MatrixNF M(F, dim, dim);
    for (int i = 0; i <= w1; ++i)
      for (int j = 0; j <= w2; ++j) {
        PairDual e(F, w1, w2);
        e.at(i, j) = NFElem(F, Rational(1));
        PhiVec v(F, chi);
        v.add(n, pair_to_level(n, e, chi));
        PairDual r = rs.rho(v);
        for (int i2 = 0; i2 <= w1; ++i2)
          for (int j2 = 0; j2 <= w2; ++j2)
            M.at(i2 * (w2 + 1) + j2, i * (w2 + 1) + j) = r.at(i2, j2);
      }
    NFElem tr(F);
    for (int t = 0; t < dim; ++t) tr += M.at(t, t);
    NFElem dn = tr * Rational(2 * n + 1).inv();
    if (dn.is_zero()) throw InternalError("level scalar of the section vanished");
    rs.inv_d.emplace(n, dn.inv());
    per_level.emplace(n, std::move(M));
  }
  MatrixNF sum(F, dim, dim);
  for (const auto& [n, M] : per_level) sum = sum + M.scaled(rs.inv_d.at(n));
  MatrixNF id = MatrixNF::identity(F, dim);
  for (int r = 0; r < dim; ++r)
    for (int c0 = 0; c0 < dim; ++c0)
      if (!(sum.at(r, c0) == id.at(r, c0)))
        throw InternalError("restriction does not invert the section");
  return rs;
}

PhiVec delta_s_complex(const PairDual& mu, const RhoSection& rs) {
  const FieldPtr& F = rs.F;
  PhiVec first = hatH_recurrence(rs.section(mu));
  first -= rs.section(lie_act_pair(gen_Hhat(F), mu));
  first *= NFElem(F, Rational(1, 2));
  PhiVec closed(F, rs.chi);
  if (mu.w1 >= 0 && !mu.is_zero()) {
    VkDual up = pullback_dxdy(pair_to_level(rs.chi.N - 2, mu, rs.chi));
    Rational cst = Rational(-2) * Rational::binom(2 * rs.chi.N - 4, rs.k_id - 2);
    closed.add(rs.chi.N - 1, up * NFElem(F, cst));
  }
  if (first != closed) throw FormulaMismatch("delta s disagrees with its closed form");
  return first;
}

PhiVec delta_s_complex(const PairDual& mu, int k_id, int k_c) {
  if (!mu.F) throw BadInput("pair functional without a field");
  return delta_s_complex(mu, rho_section_complex(mu.F, k_id, k_c));
}

Mat2 cgen_matrix(CGen X, const FieldPtr& F) {
  switch (X) {
    case CGen::Hhat:
      return gen_Hhat(F);
    case CGen::Wtilde:
      return gen_Wtilde(F);
    case CGen::H:
      return gen_Hc(F);
  }
  throw BadGenerator("unknown generator");
}

PhiVec kappa_act_phi(const Mat2& g, const PhiVec& v) {
  const FieldPtr& F = g.a.field();
  if (!(g.d == conj_c(g.a)) || !(g.c == -conj_c(g.b)) ||
      !(g.det() == NFElem(F, Rational(1))))
    throw BadInput("translation by a matrix outside the unit quaternions");
  PhiVec out(v.F, v.chi);
  for (const auto& [n, mu] : v.c) out.add(n, dual_act(g, mu));
  return out;
}

PhiVec lie_act_complex(CGen X, const PhiVec& v) {
  if (X == CGen::Hhat) return hatH_recurrence(v);
  if (v.is_zero()) {
    PhiVec out(v.F, v.chi);
    return out;
  }
  const FieldPtr& F = v.F;
  NFElem h = sqrt2(F) * Rational(1, 2);
  Mat2 kap = (X == CGen::Wtilde) ? su2_point(h, h) : su2_point(h, -(h * imag_unit(F)));
  return kappa_act_phi(kap.inverse(), hatH_recurrence(kappa_act_phi(kap, v)));
}

namespace {

PairDual indicator_pair(const FieldPtr& F, int w1, int w2, int i, int j) {
  PairDual e(F, w1, w2);
  e.at(i, j) = NFElem(F, Rational(1));
  return e;
}

// Linear map from pair functionals to model vectors, stored by its values on
// the pair indicators in row-major order.
struct HomC {
  FieldPtr F;
  CharC chi;
  int w1 = 0, w2 = 0;
  std::vector<PhiVec> val;

  int dim() const { return (w1 + 1) * (w2 + 1); }
};

HomC hom_zero(const FieldPtr& F, CharC chi, int w1, int w2) {
  HomC h{F, chi, w1, w2, {}};
  h.val.assign(static_cast<size_t>(h.dim()), PhiVec(F, chi));
  return h;
}

PhiVec hom_apply(const HomC& h, const PairDual& mu) {
  PhiVec out(h.F, h.chi);
  if (mu.w1 < 0) return out;
  for (int i = 0; i <= h.w1; ++i)
    for (int j = 0; j <= h.w2; ++j) {
      const NFElem& cc = mu.at(i, j);
      if (cc.is_zero()) continue;
      out += h.val[i * (h.w2 + 1) + j] * cc;
    }
  return out;
}

HomC hom_neg(HomC h) {
  for (auto& v : h.val) v = -v;
  return h;
}

HomC hom_scale(HomC h, const NFElem& s) {
  for (auto& v : h.val) v *= s;
  return h;
}

HomC hom_add(HomC a, const HomC& b) {
  for (size_t t = 0; t < a.val.size(); ++t) a.val[t] += b.val[t];
  return a;
}

HomC hom_sub(HomC a, const HomC& b) {
  for (size_t t = 0; t < a.val.size(); ++t) a.val[t] -= b.val[t];
  return a;
}

bool hom_is_zero(const HomC& h) {
  for (const auto& v : h.val)
    if (!v.is_zero()) return false;
  return true;
}

HomC kappa_conj_hom(const Mat2& g, const HomC& h) {
  HomC out = hom_zero(h.F, h.chi, h.w1, h.w2);
  Mat2 gi = g.inverse();
  for (int i = 0; i <= h.w1; ++i)
    for (int j = 0; j <= h.w2; ++j) {
      PairDual e = indicator_pair(h.F, h.w1, h.w2, i, j);
      out.val[i * (h.w2 + 1) + j] =
          kappa_act_phi(g, hom_apply(h, kappa_act_pair(gi, e)));
    }
  return out;
}

HomC lie_hom(CGen X, const Mat2& Xmat, const HomC& h) {
  HomC out = hom_zero(h.F, h.chi, h.w1, h.w2);
  for (int i = 0; i <= h.w1; ++i)
    for (int j = 0; j <= h.w2; ++j) {
      PairDual e = indicator_pair(h.F, h.w1, h.w2, i, j);
      out.val[i * (h.w2 + 1) + j] =
          lie_act_complex(X, h.val[i * (h.w2 + 1) + j]) -
          hom_apply(h, lie_act_pair(Xmat, e));
    }
  return out;
}

// Coordinates of a trace-zero Hermitian matrix on (Hhat, Wtilde, H).
struct Coords3 {
  NFElem u, x, y;
};

Coords3 herm_coords(const Mat2& M, const FieldPtr& F) {
  NFElem half(F, Rational(1, 2));
  NFElem pa = (M.a + conj_c(M.a)) * half;
  NFElem pb = (M.b + conj_c(M.c)) * half;
  NFElem pc = (M.c + conj_c(M.b)) * half;
  NFElem pd = (M.d + conj_c(M.d)) * half;
  if (!(pa + pd).is_zero() || !(pc == conj_c(pb)))
    throw InternalError("transverse part of a bracket is not trace-zero Hermitian");
  Coords3 cc{pa, (pb + conj_c(pb)) * half, (pb - conj_c(pb)) * half * imag_unit(F)};
  return cc;
}

// Second-cocycle values on ordered basis pairs; indices 0 = Hhat,
// 1 = Wtilde, 2 = H, storage (Hhat,Wtilde), (Hhat,H), (Wtilde,H).
HomC pair_lookup(const std::array<const HomC*, 3>& v2, int x, int z) {
  if (x == z) return hom_zero(v2[0]->F, v2[0]->chi, v2[0]->w1, v2[0]->w2);
  int a = x, b = z, sign = 1;
  if (a > b) {
    std::swap(a, b);
    sign = -1;
  }
  int idx = (a == 0) ? (b == 1 ? 0 : 1) : 2;
  return sign > 0 ? *v2[idx] : hom_neg(*v2[idx]);
}

HomC c2_on(const std::array<const HomC*, 3>& v2, const Coords3& cc, int z) {
  HomC out = hom_scale(pair_lookup(v2, 0, z), cc.u);
  out = hom_add(out, hom_scale(pair_lookup(v2, 1, z), cc.x));
  out = hom_add(out, hom_scale(pair_lookup(v2, 2, z), cc.y));
  return out;
}

struct CocycleData {
  FieldPtr F;
  CharC chi;
  int k_id = 0, k_c = 0, w1 = 0, w2 = 0;
  Mat2 kap1, kap2;
  HomC ds;
  HomC c1_hat, c1_wt, c1_h;
  HomC c2_hw, c2_hh, c2_wh;  // (Hhat,Wtilde), (Hhat,H), (Wtilde,H)
};

CocycleData build_cocycles(const FieldPtr& F, int k_id, int k_c, bool perturb_c2) {
  CharC chi = CharC::for_weights(k_id, k_c);
  RhoSection rs = rho_section_complex(F, k_id, k_c);
  const int w1 = k_id - 2, w2 = k_c - 2;
  NFElem h = sqrt2(F) * Rational(1, 2);
  CocycleData d;
  d.F = F;
  d.chi = chi;
  d.k_id = k_id;
  d.k_c = k_c;
  d.w1 = w1;
  d.w2 = w2;
  d.kap1 = su2_point(h, h);
  d.kap2 = su2_point(h, -(h * imag_unit(F)));
  d.ds = hom_zero(F, chi, w1, w2);
  for (int i = 0; i <= w1; ++i)
    for (int j = 0; j <= w2; ++j)
      d.ds.val[i * (w2 + 1) + j] =
          delta_s_complex(indicator_pair(F, w1, w2, i, j), rs);
  d.c1_hat = hom_scale(d.ds, NFElem(F, Rational(2)));
  d.c1_wt = hom_neg(kappa_conj_hom(d.kap1, d.c1_hat));
  d.c1_h = hom_neg(kappa_conj_hom(d.kap2, d.c1_hat));
  d.c2_wh = perturb_c2 ? hom_scale(d.c1_hat, NFElem(F, Rational(2))) : d.c1_hat;
  d.c2_hh = kappa_conj_hom(d.kap1, d.c2_wh);
  d.c2_hw = hom_neg(kappa_conj_hom(d.kap2, d.c2_wh));
  return d;
}

void check_cocycle_identity(const CocycleData& d) {
  const FieldPtr& F = d.F;
  std::array<Mat2, 3> X = {gen_Hhat(F), gen_Wtilde(F), gen_Hc(F)};
  std::array<CGen, 3> Xg = {CGen::Hhat, CGen::Wtilde, CGen::H};
  std::array<const HomC*, 3> v2 = {&d.c2_hw, &d.c2_hh, &d.c2_wh};
  auto comm = [](const Mat2& A, const Mat2& B) { return A * B - B * A; };
  HomC T = lie_hom(Xg[0], X[0], *v2[2]);
  T = hom_sub(T, lie_hom(Xg[1], X[1], *v2[1]));
  T = hom_add(T, lie_hom(Xg[2], X[2], *v2[0]));
  T = hom_sub(T, c2_on(v2, herm_coords(comm(X[0], X[1]), F), 2));
  T = hom_add(T, c2_on(v2, herm_coords(comm(X[0], X[2]), F), 1));
  T = hom_sub(T, c2_on(v2, herm_coords(comm(X[1], X[2]), F), 0));
  if (!hom_is_zero(T)) throw FormulaMismatch("second cocycle fails the three-term identity");
}

// Coefficient of each hom value against the distinguished monomial of the
// companion character model: divide level n by the binomial intertwiner and
// read the expansion off at the identity point of the sphere.
MatrixNF borel_value(const HomC& h) {
  const int lamhat = h.chi.N - 1, nhat = h.chi.lambda + 1;
  MatrixNF q(h.F, h.w1 + 1, h.w2 + 1);
  for (int i = 0; i <= h.w1; ++i)
    for (int j = 0; j <= h.w2; ++j) {
      NFElem acc(h.F);
      for (const auto& [n, mu] : h.val[i * (h.w2 + 1) + j].c) {
        if (n < lamhat) throw InternalError("cocycle value leaves the kernel submodule");
        NFElem term =
            mu.value_on(n - lamhat) * Rational::binom(n + lamhat, nhat + n - 1).inv();
        if ((n - lamhat) % 2 != 0) term = -term;
        acc += term;
      }
      q.at(i, j) = acc;
    }
  return q;
}

// Matrix of dchi(X) - (action of X on pair functionals) on the flattened
// indicator coordinates.
MatrixNF act_borel(const FieldPtr& F, int w1, int w2, const Mat2& Xmat,
                   const NFElem& dchi) {
  const int dim = (w1 + 1) * (w2 + 1);
  MatrixNF A(F, dim, dim);
  for (int i2 = 0; i2 <= w1; ++i2)
    for (int j2 = 0; j2 <= w2; ++j2) {
      const int row = i2 * (w2 + 1) + j2;
      PairDual Xe = lie_act_pair(Xmat, indicator_pair(F, w1, w2, i2, j2));
      for (int i = 0; i <= w1; ++i)
        for (int j = 0; j <= w2; ++j) A.at(row, i * (w2 + 1) + j) = -Xe.at(i, j);
      A.at(row, row) += dchi;
    }
  return A;
}

}  // namespace

PVReport c2_and_pv_check(int k_id, int k_c, bool perturb_c2) {
  const FieldPtr& F = NumberField::cyclotomic8();
  CocycleData d = build_cocycles(F, k_id, k_c, perturb_c2);
  check_cocycle_identity(d);

  const int dim = (d.w1 + 1) * (d.w2 + 1);
  NFElem half(F, Rational(1, 2)), iF = imag_unit(F);

  PVReport rep;
  rep.k_id = k_id;
  rep.k_c = k_c;
  rep.c1_hath = borel_value(d.c1_hat);
  rep.c1_n1 = borel_value(d.c1_wt).scaled(half);
  rep.c1_n2 = borel_value(d.c1_h).scaled(-half);
  rep.c2_n1n2 = borel_value(d.c2_wh).scaled(-(half * half));
  rep.c2_n1hath = borel_value(d.c2_hw).scaled(-half);
  rep.c2_n2hath = borel_value(d.c2_hh).scaled(half);

  // difference between the contracted first cocycle and i times the second
  MatrixNF zero_m(F, d.w1 + 1, d.w2 + 1);
  MatrixNF diff_n1n2 = zero_m - rep.c2_n1n2.scaled(iF);
  MatrixNF diff_n1h = zero_m - rep.c1_n1 - rep.c2_n1hath.scaled(iF);
  MatrixNF diff_n2h = zero_m - rep.c1_n2 - rep.c2_n2hath.scaled(iF);

  Mat2 mh = gen_Hhat(F);
  Mat2 mn1{NFElem(F), NFElem(F, Rational(1)), NFElem(F), NFElem(F)};
  Mat2 mn2{NFElem(F), iF, NFElem(F), NFElem(F)};
  Mat2 mhi = mh.scaled(iF);
  const int nhat = d.chi.lambda + 1, lamhat = d.chi.N - 1;
  MatrixNF ah = act_borel(F, d.w1, d.w2, mh, NFElem(F, Rational(2 * nhat)));
  MatrixNF an1 = act_borel(F, d.w1, d.w2, mn1, NFElem(F));
  MatrixNF an2 = act_borel(F, d.w1, d.w2, mn2, NFElem(F));
  MatrixNF ahi = act_borel(F, d.w1, d.w2, mhi, iF * Rational(2 * lamhat));

  // unknown one-cochain values on (Hhat, n1, n2); the first three row blocks
  // impose torus equivariance, the last three are the coboundary equations
  const int rows = 6 * dim, cols = 3 * dim;
  MatrixNF A(F, rows, cols);
  std::vector<NFElem> b(static_cast<size_t>(rows), NFElem(F));
  MatrixNF id = MatrixNF::identity(F, dim);
  auto put = [&](int rb, int cb, const MatrixNF& M, const Rational& sc) {
    for (int r = 0; r < dim; ++r)
      for (int c0 = 0; c0 < dim; ++c0)
        A.at(rb * dim + r, cb * dim + c0) += M.at(r, c0) * sc;
  };
  auto put_rhs = [&](int rb, const MatrixNF& D) {
    for (int i = 0; i <= d.w1; ++i)
      for (int j = 0; j <= d.w2; ++j)
        b[static_cast<size_t>(rb * dim + i * (d.w2 + 1) + j)] = D.at(i, j);
  };
  put(0, 0, ahi, Rational(1));
  put(1, 1, ahi, Rational(1));
  put(1, 2, id, Rational(-2));
  put(2, 2, ahi, Rational(1));
  put(2, 1, id, Rational(2));
  put(3, 2, an1, Rational(1));
  put(3, 1, an2, Rational(-1));
  put_rhs(3, diff_n1n2);
  put(4, 0, an1, Rational(1));
  put(4, 1, ah, Rational(-1));
  put(4, 1, id, Rational(2));
  put_rhs(4, diff_n1h);
  put(5, 0, an2, Rational(1));
  put(5, 2, ah, Rational(-1));
  put(5, 2, id, Rational(2));
  put_rhs(5, diff_n2h);

  std::vector<NFElem> x;
  if (!solve_linear(A, b, x))
    throw PVCheckFailed("no equivariant one-cochain writes the pair as a coboundary");
  rep.psi_unknowns = cols;
  rep.psi = std::move(x);
  return rep;
}

void PhiTensor::add(int n1, int n2, const PairDual& t) {
  if (n1 < std::abs(chi.lambda) || n2 < std::abs(chi.lambda))
    throw BadLevel("level below the character bound");
  if (t.is_zero()) return;
  auto key = std::make_pair(n1, n2);
  auto it = c.find(key);
  if (it == c.end()) {
    c.emplace(key, t);
    return;
  }
  it->second += t;
  if (it->second.is_zero()) c.erase(it);
}

bool operator==(const PhiTensor& a, const PhiTensor& b) {
  if (a.c.empty() && b.c.empty()) return true;
  if (a.chi != b.chi) return false;
  return a.c == b.c;
}

PhiTensor cup3_complex(int k_id, int k_c) {
  const FieldPtr& F = NumberField::cyclotomic8();
  CharC chi = CharC::for_weights(k_id, k_c);
  if (!psi_intertwine_check(k_id, k_c, chi.N + 3))
    throw FormulaMismatch("binomial intertwiner fails ahead of the cup evaluation");
  CocycleData d = build_cocycles(F, k_id, k_c, false);
  const int w1 = d.w1, w2 = d.w2;
  VkTensor uid = upsilon(F, k_id), uc = upsilon(F, k_c);
  auto ups_coeff = [&](int i1, int j1, int i2, int j2) {
    return uid.m.at(i1, i2) * uc.m.at(j1, j2);
  };
  auto accum = [](PhiTensor& T, const PhiVec& u, const PhiVec& v, const NFElem& sc) {
    for (const auto& [n1, mu] : u.c)
      for (const auto& [n2, nu] : v.c) T.add(n1, n2, PairDual::pure(mu, nu) * sc);
  };

  PhiTensor routeA(F, chi);
  for (int i1 = 0; i1 <= w1; ++i1)
    for (int j1 = 0; j1 <= w2; ++j1)
      for (int i2 = 0; i2 <= w1; ++i2)
        for (int j2 = 0; j2 <= w2; ++j2) {
          NFElem cc = ups_coeff(i1, j1, i2, j2);
          if (cc.is_zero()) continue;
          const int s1 = i1 * (w2 + 1) + j1, s2 = i2 * (w2 + 1) + j2;
          accum(routeA, d.c1_hat.val[s1], d.c2_wh.val[s2], cc);
          accum(routeA, d.c1_wt.val[s1], d.c2_hh.val[s2], -cc);
          accum(routeA, d.c1_h.val[s1], d.c2_hw.val[s2], cc);
        }

  PhiTensor routeC(F, chi);
  {
    std::array<Mat2, 3> pts = {Mat2::identity(F), d.kap1, d.kap2};
    NFElem four(F, Rational(4));
    for (const Mat2& g : pts) {
      HomC gds = kappa_conj_hom(g, d.ds);
      for (int i1 = 0; i1 <= w1; ++i1)
        for (int j1 = 0; j1 <= w2; ++j1)
          for (int i2 = 0; i2 <= w1; ++i2)
            for (int j2 = 0; j2 <= w2; ++j2) {
              NFElem cc = ups_coeff(i1, j1, i2, j2);
              if (cc.is_zero()) continue;
              accum(routeC, gds.val[i1 * (w2 + 1) + j1],
                    gds.val[i2 * (w2 + 1) + j2], cc * four);
            }
    }
  }

  // exact average over the sphere of the translated tensor square, through
  // symbolic translation matrices in the point coordinates
  RingPtr R = PolyRing::sphere(F);
  MultiPoly va = MultiPoly::var(R, "alpha"), vb = MultiPoly::var(R, "beta");
  MultiPoly vab = MultiPoly::var(R, "alphabar"), vbb = MultiPoly::var(R, "betabar");
  MultiPoly nvb = -vb, nvbb = -vbb;
  auto sym_dual = [&](const MultiPoly& al, const MultiPoly& be, const MultiPoly& alb,
                      const MultiPoly& beb, int w) {
    std::vector<std::vector<MultiPoly>> M(
        static_cast<size_t>(w + 1),
        std::vector<MultiPoly>(static_cast<size_t>(w + 1), MultiPoly(R)));
    for (int p = 0; p <= w; ++p)
      for (int i = 0; i <= w; ++i) {
        MultiPoly acc(R);
        for (int u = std::max(0, i - (w - p)); u <= std::min(i, p); ++u) {
          const int v = i - u;
          Rational cst = Rational::binom(p, u) * Rational::binom(w - p, v);
          if (v % 2 != 0) cst = -cst;
          MultiPoly t = al.pow(w - p - v) * be.pow(v) * alb.pow(u) * beb.pow(p - u);
          t *= cst;
          acc += t;
        }
        M[p][i] = acc;
      }
    return M;
  };
  const int L = chi.N - 1, wl = 2 * L;
  auto mval = sym_dual(va, vb, vab, vbb, wl);
  auto arg1 = sym_dual(vab, nvb, va, nvbb, w1);
  auto arg2 = sym_dual(va, nvbb, vab, nvb, w2);
  MatrixNF bm(F, wl + 1, wl + 1);
  for (int i1 = 0; i1 <= w1; ++i1)
    for (int j1 = 0; j1 <= w2; ++j1)
      for (int i2 = 0; i2 <= w1; ++i2)
        for (int j2 = 0; j2 <= w2; ++j2) {
          NFElem cc = ups_coeff(i1, j1, i2, j2);
          if (cc.is_zero()) continue;
          for (int p1 = 0; p1 <= w1; ++p1)
            for (int q1 = 0; q1 <= w2; ++q1) {
              VkDual nu1 = d.ds.val[p1 * (w2 + 1) + q1].coeff(L);
              if (nu1.is_zero()) continue;
              MultiPoly a1 = arg1[p1][i1] * arg2[q1][j1];
              if (a1.is_zero()) continue;
              for (int p2 = 0; p2 <= w1; ++p2)
                for (int q2 = 0; q2 <= w2; ++q2) {
                  VkDual nu2 = d.ds.val[p2 * (w2 + 1) + q2].coeff(L);
                  if (nu2.is_zero()) continue;
                  MultiPoly a2 = arg1[p2][i2] * arg2[q2][j2];
                  if (a2.is_zero()) continue;
                  MultiPoly base = a1 * a2;
                  for (int p = 0; p <= wl; ++p)
                    for (int q = 0; q <= wl; ++q) {
                      NFElem tot(F);
                      for (int i = 0; i <= wl; ++i) {
                        if (nu1.value_on(i).is_zero()) continue;
                        for (int j = 0; j <= wl; ++j) {
                          if (nu2.value_on(j).is_zero()) continue;
                          NFElem mom = moment_average(base * mval[p][i] * mval[q][j]);
                          tot += mom * nu1.value_on(i) * nu2.value_on(j);
                        }
                      }
                      bm.at(p, q) += tot * cc;
                    }
                }
            }
        }
  PhiTensor routeB(F, chi);
  {
    PairDual bp(F, wl, wl);
    bp.m = bm.scaled(NFElem(F, Rational(12)));
    routeB.add(L, L, bp);
  }

  MultiPoly w0 = va * vab - vb * vbb;
  if (!(moment_average(w0 * w0) == NFElem(F, Rational(1, 3))))
    throw FormulaMismatch("square moment of the torus coordinate is off");
  if (routeA != routeB || routeA != routeC)
    throw FormulaMismatch("cup value differs between evaluation routes");
  return routeA;
}

bool psi_intertwine_check(int k_id, int k_c, int n_max, int offset_shift) {
  const FieldPtr& F = NumberField::rationals();
  CharC chi = CharC::for_weights(k_id, k_c);
  CharC hat = chi.hat();
  auto bino = [&](int n) {
    return Rational::binom(n + hat.lambda, hat.N + n - 1 + offset_shift);
  };
  for (int n = std::abs(hat.lambda); n <= n_max; ++n)
    for (int j = 0; j <= 2 * n; ++j) {
      VkDual e(F, 2 * n);
      e.value_on(j) = NFElem(F, Rational(1));
      PhiVec vhat(F, hat);
      vhat.add(n, e);
      PhiVec lhs(F, chi);
      for (const auto& [np, nu] : hatH_recurrence(vhat).c) {
        Rational bn = bino(np);
        if (!bn.is_zero()) lhs.add(np, nu * NFElem(F, bn));
      }
      PhiVec w(F, chi);
      Rational bn = bino(n);
      if (!bn.is_zero()) w.add(n, e * NFElem(F, bn));
      if (lhs != hatH_recurrence(w)) return false;
    }
  return true;
}

}  // namespace gkv
