#include "gkv/quat.hpp"

#include <utility>

#include "gkv/errors.hpp"
#include "gkv/matrixnf.hpp"
#include "gkv/multipoly.hpp"

namespace gkv {

QuatAlgPtr QuaternionAlgebra::make(const FieldPtr& F, const NFElem& a,
                                   const NFElem& b) {
  if (a.is_zero() || b.is_zero())
    throw BadInput("quaternion parameters must be nonzero");
  auto B = std::make_shared<QuaternionAlgebra>();
  B->base_field = F;
  B->a = promote(a, F);
  B->b = promote(b, F);
  return B;
}

bool QuaternionAlgebra::same(const QuaternionAlgebra& o) const {
  return base_field->same(*o.base_field) && a == o.a && b == o.b;
}

static void check_same_algebra(const QuatAlgPtr& x, const QuatAlgPtr& y) {
  if (x.get() == y.get()) return;
  if (!x->same(*y)) throw AlgebraMismatch("elements of different algebras");
}

QuatElem::QuatElem(QuatAlgPtr B) : B_(std::move(B)) {
  x_.fill(NFElem(B_->base_field));
}

QuatElem::QuatElem(QuatAlgPtr B, std::array<NFElem, 4> coords)
    : B_(std::move(B)), x_(std::move(coords)) {
  for (auto& c : x_) c = promote(c, B_->base_field);
}

QuatElem QuatElem::one(const QuatAlgPtr& B) {
  QuatElem q(B);
  q.x_[0] = NFElem(B->base_field, Rational(1));
  return q;
}

QuatElem QuatElem::unit_i(const QuatAlgPtr& B) {
  QuatElem q(B);
  q.x_[1] = NFElem(B->base_field, Rational(1));
  return q;
}

QuatElem QuatElem::unit_j(const QuatAlgPtr& B) {
  QuatElem q(B);
  q.x_[2] = NFElem(B->base_field, Rational(1));
  return q;
}

QuatElem QuatElem::unit_k(const QuatAlgPtr& B) {
  QuatElem q(B);
  q.x_[3] = NFElem(B->base_field, Rational(1));
  return q;
}

bool QuatElem::is_zero() const {
  for (const auto& c : x_)
    if (!c.is_zero()) return false;
  return true;
}

QuatElem QuatElem::conj() const {
  QuatElem q = *this;
  for (int n = 1; n < 4; ++n) q.x_[n] = -q.x_[n];
  return q;
}

NFElem QuatElem::norm() const {
  const NFElem& a = B_->a;
  const NFElem& b = B_->b;
  return x_[0] * x_[0] - a * x_[1] * x_[1] - b * x_[2] * x_[2] +
         a * b * x_[3] * x_[3];
}

QuatElem QuatElem::inv() const {
  NFElem n = norm();
  if (n.is_zero()) throw DivisionByZero("quaternion has zero norm");
  QuatElem q = conj();
  return q *= n.inv();
}

QuatElem QuatElem::operator-() const {
  QuatElem q = *this;
  for (auto& c : q.x_) c = -c;
  return q;
}

QuatElem& QuatElem::operator+=(const QuatElem& o) {
  check_same_algebra(B_, o.B_);
  for (int n = 0; n < 4; ++n) x_[n] += o.x_[n];
  return *this;
}

QuatElem& QuatElem::operator-=(const QuatElem& o) {
  check_same_algebra(B_, o.B_);
  for (int n = 0; n < 4; ++n) x_[n] -= o.x_[n];
  return *this;
}

QuatElem& QuatElem::operator*=(const NFElem& s) {
  NFElem t = promote(s, B_->base_field);
  for (auto& c : x_) c *= t;
  return *this;
}

QuatElem operator*(const QuatElem& x, const QuatElem& y) {
  check_same_algebra(x.B_, y.B_);
  const NFElem& a = x.B_->a;
  const NFElem& b = x.B_->b;
  const auto& u = x.x_;
  const auto& v = y.x_;
  QuatElem z(x.B_);
  z.x_[0] = u[0] * v[0] + a * u[1] * v[1] + b * u[2] * v[2] -
            a * b * u[3] * v[3];
  z.x_[1] = u[0] * v[1] + u[1] * v[0] - b * u[2] * v[3] + b * u[3] * v[2];
  z.x_[2] = u[0] * v[2] + u[2] * v[0] + a * u[1] * v[3] - a * u[3] * v[1];
  z.x_[3] = u[0] * v[3] + u[3] * v[0] + u[1] * v[2] - u[2] * v[1];
  return z;
}

bool operator==(const QuatElem& x, const QuatElem& y) {
  check_same_algebra(x.B_, y.B_);
  return x.x_ == y.x_;
}

NFElem trace_pairing(const QuatElem& b1, const QuatElem& b2) {
  check_same_algebra(b1.algebra(), b2.algebra());
  return (b1 * b2.conj()).trace();
}

SymTensor::SymTensor(QuatAlgPtr B, int degree)
    : B_(std::move(B)), deg_(degree) {
  if (degree < 0) throw BadInput("negative tensor degree");
}

SymTensor SymTensor::monomial(const QuatAlgPtr& B, const Key& e,
                              const NFElem& c) {
  int d = e[0] + e[1] + e[2];
  if (e[0] < 0 || e[1] < 0 || e[2] < 0)
    throw BadInput("negative exponent in tensor monomial");
  SymTensor t(B, d);
  t.add_term(e, promote(c, B->base_field));
  return t;
}

SymTensor SymTensor::from_quat(const QuatElem& q) {
  if (!q.is_trace_zero()) throw NotTraceZero("tensor slots are trace-zero");
  SymTensor t(q.algebra(), 1);
  t.add_term({1, 0, 0}, q.coord(1));
  t.add_term({0, 1, 0}, q.coord(2));
  t.add_term({0, 0, 1}, q.coord(3));
  return t;
}

NFElem SymTensor::coeff(const Key& e) const {
  auto it = terms_.find(e);
  if (it == terms_.end()) return NFElem(B_->base_field);
  return it->second;
}

void SymTensor::add_term(const Key& e, const NFElem& c) {
  if (c.is_zero()) return;
  if (e[0] + e[1] + e[2] != deg_) throw BadInput("tensor degree mismatch");
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SymTensor SymTensor::operator-() const {
  SymTensor t = *this;
  for (auto& [e, c] : t.terms_) c = -c;
  return t;
}

SymTensor& SymTensor::operator+=(const SymTensor& o) {
  check_same_algebra(B_, o.B_);
  if (deg_ != o.deg_) throw DegreeTooSmall("tensor degrees differ");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

SymTensor& SymTensor::operator-=(const SymTensor& o) {
  check_same_algebra(B_, o.B_);
  if (deg_ != o.deg_) throw DegreeTooSmall("tensor degrees differ");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

SymTensor& SymTensor::operator*=(const NFElem& s) {
  NFElem t = promote(s, B_->base_field);
  if (t.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= t;
  return *this;
}

bool operator==(const SymTensor& a, const SymTensor& b) {
  check_same_algebra(a.B_, b.B_);
  return a.deg_ == b.deg_ && a.terms_ == b.terms_;
}

SymTensor mul(const SymTensor& a, const SymTensor& b) {
  check_same_algebra(a.B_, b.B_);
  SymTensor r(a.B_, a.deg_ + b.deg_);
  for (const auto& [e, c] : a.terms_)
    for (const auto& [f, d] : b.terms_)
      r.add_term({e[0] + f[0], e[1] + f[1], e[2] + f[2]}, c * d);
  return r;
}

SymTensor delta_k(const SymTensor& t) {
  if (t.degree() < 2) throw DegreeTooSmall("contraction needs degree >= 2");
  const QuatAlgPtr& B = t.algebra();
  QuatElem ui = QuatElem::unit_i(B), uj = QuatElem::unit_j(B),
           uk = QuatElem::unit_k(B);
  NFElem pii = trace_pairing(ui, ui);
  NFElem pjj = trace_pairing(uj, uj);
  NFElem pkk = trace_pairing(uk, uk);
  SymTensor r(B, t.degree() - 2);
  // The basis (i, j, k) is orthogonal, so only same-letter pairs survive:
  // a letter with exponent e contributes binom(e,2) <letter,letter>.
  for (const auto& [e, c] : t.terms()) {
    if (e[0] >= 2)
      r.add_term({e[0] - 2, e[1], e[2]},
                 c * Rational::binom(e[0], 2) * pii);
    if (e[1] >= 2)
      r.add_term({e[0], e[1] - 2, e[2]},
                 c * Rational::binom(e[1], 2) * pjj);
    if (e[2] >= 2)
      r.add_term({e[0], e[1], e[2] - 2},
                 c * Rational::binom(e[2], 2) * pkk);
  }
  return r;
}

VkElem VkElem::make(SymTensor t) {
  int k = 2 * t.degree();
  if (t.degree() >= 2 && !delta_k(t).is_zero())
    throw BadInput("tensor is not harmonic");
  return VkElem{std::move(t), k};
}

// Monomial keys of total degree n in lexicographic order; the index maps are
// rebuilt on the fly (sizes stay tiny for the weights in play).
static std::vector<SymTensor::Key> degree_keys(int n) {
  std::vector<SymTensor::Key> keys;
  for (int e0 = 0; e0 <= n; ++e0)
    for (int e1 = 0; e1 + e0 <= n; ++e1)
      keys.push_back({e0, e1, n - e0 - e1});
  return keys;
}

static int key_index(const std::vector<SymTensor::Key>& keys,
                     const SymTensor::Key& e) {
  for (size_t n = 0; n < keys.size(); ++n)
    if (keys[n] == e) return static_cast<int>(n);
  throw InternalError("tensor key outside its degree block");
}

std::vector<VkElem> vk_basis(const QuatAlgPtr& B, int k) {
  if (k < 0 || k % 2 != 0) throw BadWeight("even nonnegative weight required");
  const FieldPtr& F = B->base_field;
  int n = k / 2;
  auto keys = degree_keys(n);
  std::vector<VkElem> out;
  if (n < 2) {
    for (const auto& e : keys)
      out.push_back(
          VkElem{SymTensor::monomial(B, e, NFElem(F, Rational(1))), k});
    return out;
  }
  auto low = degree_keys(n - 2);
  MatrixNF M(F, static_cast<int>(low.size()), static_cast<int>(keys.size()));
  for (size_t col = 0; col < keys.size(); ++col) {
    SymTensor im = delta_k(
        SymTensor::monomial(B, keys[col], NFElem(F, Rational(1))));
    for (const auto& [e, c] : im.terms())
      M.at(key_index(low, e), static_cast<int>(col)) = c;
  }
  for (const auto& vec : kernel_basis(M)) {
    SymTensor t(B, n);
    for (size_t col = 0; col < keys.size(); ++col)
      t.add_term(keys[col], vec[col]);
    out.push_back(VkElem{std::move(t), k});
  }
  return out;
}

Mat2 iota_embed(const QuatElem& q, const NFElem& sqrt_a) {
  const FieldPtr& L = sqrt_a.field();
  const QuatAlgPtr& B = q.algebra();
  NFElem a = promote(B->a, L), b = promote(B->b, L);
  if (sqrt_a * sqrt_a != a)
    throw MissingRoot("given element does not square to the parameter a");
  NFElem x0 = promote(q.coord(0), L), x1 = promote(q.coord(1), L);
  NFElem x2 = promote(q.coord(2), L), x3 = promote(q.coord(3), L);
  NFElem e1 = x0 + x1 * sqrt_a, e1c = x0 - x1 * sqrt_a;
  NFElem e2 = x2 + x3 * sqrt_a, e2c = x2 - x3 * sqrt_a;
  return {e1, b * e2, e2c, e1c};
}

PkPoly kappa_factor(const Mat2& m) {
  PkPoly f(m.a.field(), 2);
  f.coeff(2) = -m.b;
  f.coeff(1) = m.a - m.d;
  f.coeff(0) = m.c;
  return f;
}

PkPoly kappa_embed(const VkElem& v, const NFElem& sqrt_a) {
  const FieldPtr& L = sqrt_a.field();
  const QuatAlgPtr& B = v.t.algebra();
  PkPoly fi = kappa_factor(iota_embed(QuatElem::unit_i(B), sqrt_a));
  PkPoly fj = kappa_factor(iota_embed(QuatElem::unit_j(B), sqrt_a));
  PkPoly fk = kappa_factor(iota_embed(QuatElem::unit_k(B), sqrt_a));
  PkPoly acc(L, v.k);
  for (const auto& [e, c] : v.t.terms()) {
    PkPoly term = PkPoly::monomial(L, 0, 0, promote(c, L));
    for (int s = 0; s < e[0]; ++s) term = mul(term, fi);
    for (int s = 0; s < e[1]; ++s) term = mul(term, fj);
    for (int s = 0; s < e[2]; ++s) term = mul(term, fk);
    acc += term;
  }
  return acc;
}

NFElem LaurentU::coeff(int n) const {
  auto it = c.find(n);
  if (it == c.end()) return NFElem(F);
  return it->second;
}

void LaurentU::add(int n, const NFElem& v) {
  if (v.is_zero()) return;
  auto [it, fresh] = c.emplace(n, v);
  if (!fresh) {
    it->second += v;
    if (it->second.is_zero()) c.erase(it);
  }
}

bool LaurentU::is_constant() const {
  for (const auto& [n, v] : c)
    if (n != 0 && !v.is_zero()) return false;
  return true;
}

LaurentU operator*(const LaurentU& x, const LaurentU& y) {
  LaurentU r(x.F);
  for (const auto& [n, v] : x.c)
    for (const auto& [m, w] : y.c) r.add(n + m, v * w);
  return r;
}

bool operator==(const LaurentU& x, const LaurentU& y) { return x.c == y.c; }

LaurentU torus_eval(const SymTensor& t, const NFElem& sqrt_a) {
  const FieldPtr& L = sqrt_a.field();
  const QuatAlgPtr& B = t.algebra();
  auto factor = [&](const QuatElem& q) {
    Mat2 m = iota_embed(q, sqrt_a);
    LaurentU f(L);
    f.add(0, m.a - m.d);
    f.add(1, m.c);
    f.add(-1, m.b);
    return f;
  };
  LaurentU fi = factor(QuatElem::unit_i(B));
  LaurentU fj = factor(QuatElem::unit_j(B));
  LaurentU fk = factor(QuatElem::unit_k(B));
  LaurentU acc(L);
  for (const auto& [e, c] : t.terms()) {
    LaurentU term(L);
    term.add(0, promote(c, L));
    for (int s = 0; s < e[0]; ++s) term = term * fi;
    for (int s = 0; s < e[1]; ++s) term = term * fj;
    for (int s = 0; s < e[2]; ++s) term = term * fk;
    for (const auto& [n, w] : term.c) acc.add(n, w);
  }
  return acc;
}

LaurentU torus_eval(const VkElem& v, const NFElem& sqrt_a) {
  return torus_eval(v.t, sqrt_a);
}

// Conjugation by the formal norm-one unit c + d i, coefficients in the ring
// F[c, d] with c^2 rewritten to 1 + a d^2.  Returns the image of each tensor
// monomial as exact polynomials in (c, d).
static std::map<SymTensor::Key, MultiPoly> norm_one_image(
    const SymTensor& t, const RingPtr& R) {
  const QuatAlgPtr& B = t.algebra();
  const NFElem& a = B->a;
  MultiPoly c = MultiPoly::var(R, "c"), d = MultiPoly::var(R, "d");
  std::map<SymTensor::Key, MultiPoly> out;
  auto add = [&](const SymTensor::Key& e, const MultiPoly& p) {
    auto [it, fresh] = out.emplace(e, p);
    if (!fresh) it->second += p;
  };
  for (const auto& [e, coeffv] : t.terms()) {
    // j -> c j + d k and k -> a d j + c k, expanded multinomially.
    for (int r = 0; r <= e[1]; ++r)
      for (int s = 0; s <= e[2]; ++s) {
        MultiPoly p = MultiPoly::constant(
            R, coeffv * Rational::binom(e[1], r) * Rational::binom(e[2], s));
        for (int q = 0; q < r + e[2] - s; ++q) p *= c;
        for (int q = 0; q < e[1] - r + s; ++q) p *= d;
        for (int q = 0; q < s; ++q) p = p * MultiPoly::constant(R, a);
        add({e[0], r + s, e[1] - r + e[2] - s}, p);
      }
  }
  return out;
}

static RingPtr norm_one_ring(const QuatAlgPtr& B) {
  RingPtr R0 = PolyRing::make(B->base_field, {"c", "d"});
  RewriteRule rule;
  rule.lhs = {2, 0};
  rule.rhs.emplace(Exponents{0, 0},
                   NFElem(B->base_field, Rational(1)));
  rule.rhs.emplace(Exponents{0, 2}, B->a);
  return R0->with_rule(std::move(rule));
}

bool is_norm_one_invariant(const VkElem& v) {
  RingPtr R = norm_one_ring(v.t.algebra());
  auto image = norm_one_image(v.t, R);
  for (auto& [e, p] : image) {
    if (!(p - MultiPoly::constant(R, v.t.coeff(e))).is_zero()) return false;
  }
  return true;
}

std::vector<VkElem> torus_invariants(const QuatAlgPtr& B, int k) {
  if (k < 0 || k % 2 != 0) throw BadWeight("even nonnegative weight required");
  const FieldPtr& F = B->base_field;
  int n = k / 2;
  auto keys = degree_keys(n);
  RingPtr R = norm_one_ring(B);

  // Linear conditions on the coordinates: harmonicity plus invariance under
  // the formal norm-one conjugation, one row per (monomial, (c,d)-term).
  std::map<std::pair<SymTensor::Key, Exponents>, std::vector<NFElem>> inv_rows;
  auto row_of = [&](const SymTensor::Key& e, const Exponents& ex)
      -> std::vector<NFElem>& {
    auto [it, fresh] =
        inv_rows.emplace(std::make_pair(e, ex),
                         std::vector<NFElem>(keys.size(), NFElem(F)));
    return it->second;
  };
  for (size_t col = 0; col < keys.size(); ++col) {
    SymTensor mono =
        SymTensor::monomial(B, keys[col], NFElem(F, Rational(1)));
    auto image = norm_one_image(mono, R);
    // image - identity must vanish.
    for (const auto& [e, p] : image)
      for (const auto& [ex, cf] : p.terms()) row_of(e, ex)[col] += cf;
    row_of(keys[col], Exponents{0, 0})[col] -= NFElem(F, Rational(1));
  }

  std::vector<std::vector<NFElem>> rows;
  for (auto& [key, r] : inv_rows) rows.push_back(std::move(r));
  size_t delta_rows = 0;
  std::vector<SymTensor::Key> low;
  if (n >= 2) {
    low = degree_keys(n - 2);
    delta_rows = low.size();
  }
  MatrixNF M(F, static_cast<int>(rows.size() + delta_rows),
             static_cast<int>(keys.size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t cidx = 0; cidx < keys.size(); ++cidx)
      M.at(static_cast<int>(r), static_cast<int>(cidx)) = rows[r][cidx];
  if (n >= 2) {
    for (size_t col = 0; col < keys.size(); ++col) {
      SymTensor im = delta_k(
          SymTensor::monomial(B, keys[col], NFElem(F, Rational(1))));
      for (const auto& [e, cf] : im.terms())
        M.at(static_cast<int>(rows.size()) + key_index(low, e),
             static_cast<int>(col)) = cf;
    }
  }

  std::vector<VkElem> out;
  for (const auto& vec : kernel_basis(M)) {
    SymTensor t(B, n);
    for (size_t col = 0; col < keys.size(); ++col)
      t.add_term(keys[col], vec[col]);
    out.push_back(VkElem{std::move(t), k});
  }
  return out;
}

VkElem invariant_vector(const QuatAlgPtr& B, int k) {
  if (k < 2 || k % 2 != 0) throw BadWeight("even weight at least 2 required");
  const FieldPtr& F = B->base_field;
  NFElem one(F, Rational(1));
  NFElem ainv = B->a.inv();

  SymTensor v2 = SymTensor::monomial(B, {1, 0, 0}, one);
  SymTensor v4 = SymTensor::monomial(B, {0, 2, 0}, one);
  v4.add_term({0, 0, 2}, -ainv);
  v4.add_term({2, 0, 0}, -(B->b + B->b) * ainv);

  std::vector<SymTensor> span;
  for (int n = 0; 2 * n <= k / 2; ++n) {
    SymTensor t = SymTensor::monomial(B, {0, 0, 0}, one);
    for (int s = 0; s < n; ++s) t = mul(t, v4);
    for (int s = 0; s < k / 2 - 2 * n; ++s) t = mul(t, v2);
    span.push_back(std::move(t));
  }

  std::vector<NFElem> coeffs;
  if (k < 4) {
    coeffs.assign(1, one);
  } else {
    auto low = degree_keys(k / 2 - 2);
    MatrixNF M(F, static_cast<int>(low.size()),
               static_cast<int>(span.size()));
    for (size_t col = 0; col < span.size(); ++col) {
      SymTensor im = delta_k(span[col]);
      for (const auto& [e, c] : im.terms())
        M.at(key_index(low, e), static_cast<int>(col)) = c;
    }
    auto ker = kernel_basis(M);
    if (ker.size() != 1)
      throw NonUniqueInvariant("contraction kernel in the product span is not a line");
    coeffs = ker[0];
  }

  SymTensor t(B, k / 2);
  for (size_t col = 0; col < span.size(); ++col) {
    SymTensor piece = span[col];
    piece *= coeffs[col];
    t += piece;
  }
  if (t.is_zero()) throw NonUniqueInvariant("invariant candidate vanished");

  // Cross-check against the fixed subspace of the full kernel.
  auto fixed = torus_invariants(B, k);
  if (fixed.size() != 1)
    throw NonUniqueInvariant("fixed subspace of the kernel is not a line");
  {
    // Proportionality of t and the fixed-space generator.
    const SymTensor& u = fixed[0].t;
    const auto& [e0, c0] = *t.terms().begin();
    NFElem u0 = u.coeff(e0);
    if (u0.is_zero())
      throw NonUniqueInvariant("candidate is not in the fixed line");
    SymTensor scaledu = u;
    scaledu *= c0 * u0.inv();
    if (!(scaledu == t))
      throw NonUniqueInvariant("candidate is not in the fixed line");
  }

  NFElem lead = t.terms().begin()->second;
  t *= lead.inv();
  return VkElem{std::move(t), k};
}

}  // namespace gkv
