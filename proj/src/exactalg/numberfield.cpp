#include "gkv/numberfield.hpp"

#include <ostream>
#include <sstream>
#include <utility>

#include "gkv/errors.hpp"

namespace gkv {
namespace {

// Dense univariate polynomials over Q, low degree first, for the gcd
// machinery behind NFElem::inv.
using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

Poly sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// a = q*b + r with deg r < deg b.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  Poly q;
  if (b.empty()) throw DivisionByZero("polynomial division by zero");
  if (a.size() >= b.size()) q.resize(a.size() - b.size() + 1, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    Rational c = a.back() / b.back();
    size_t shift = a.size() - b.size();
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

}  // namespace

FieldPtr NumberField::make(std::vector<Rational> minpoly, std::string label) {
  if (minpoly.size() < 2) throw BadInput("minimal polynomial must have degree >= 1");
  if (minpoly.back() != Rational(1)) throw BadInput("minimal polynomial must be monic");
  return FieldPtr(new NumberField(std::move(minpoly), std::move(label)));
}

NumberField::NumberField(std::vector<Rational> minpoly, std::string label)
    : minpoly_(std::move(minpoly)), label_(std::move(label)) {
  int d = degree();
  // x^d = -(m_0 + m_1 x + ... + m_{d-1} x^{d-1}); iterate to get x^(d+r).
  std::vector<Rational> cur(d);
  for (int i = 0; i < d; ++i) cur[i] = -minpoly_[i];
  power_rows_.push_back(cur);
  for (int r = 1; r + 1 < d; ++r) {
    std::vector<Rational> next(d, Rational(0));
    // multiply cur by x, reduce the overflow term via row 0
    Rational top = cur[d - 1];
    for (int i = d - 1; i >= 1; --i) next[i] = cur[i - 1];
    next[0] = Rational(0);
    for (int i = 0; i < d; ++i) next[i] += top * power_rows_[0][i];
    power_rows_.push_back(next);
    cur = std::move(next);
  }
}

const FieldPtr& NumberField::rationals() {
  static FieldPtr f = make({Rational(0), Rational(1)}, "q");
  return f;
}

const FieldPtr& NumberField::gaussian() {
  static FieldPtr f = make({Rational(1), Rational(0), Rational(1)}, "i");
  return f;
}

const FieldPtr& NumberField::cyclotomic8() {
  static FieldPtr f = make({Rational(1), Rational(0), Rational(0), Rational(0), Rational(1)}, "z8");
  return f;
}

bool NumberField::same(const NumberField& o) const {
  return this == &o || minpoly_ == o.minpoly_;
}

NFElem::NFElem(FieldPtr f, std::vector<Rational> coeffs)
    : field_(std::move(f)), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != field_->degree())
    throw BadInput("coefficient vector length != field degree");
}

NFElem NFElem::gen(const FieldPtr& f) {
  if (f->degree() < 2) throw BadInput("prime field has no generator");
  NFElem e(f);
  e.coeffs_[1] = Rational(1);
  return e;
}

bool NFElem::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

bool NFElem::is_rational() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) return false;
  return true;
}

const Rational& NFElem::rat() const {
  if (!is_rational()) throw BadInput("NFElem is not rational: " + str());
  return coeffs_[0];
}

void align_fields(NFElem& a, NFElem& b) {
  if (a.field()->same(*b.field())) return;
  if (a.field()->degree() == 1 && a.is_rational()) {
    a = NFElem(b.field(), a.coeffs()[0]);
    return;
  }
  if (b.field()->degree() == 1 && b.is_rational()) {
    b = NFElem(a.field(), b.coeffs()[0]);
    return;
  }
  throw FieldMismatch("operands live in different number fields: " +
                      a.field()->label() + " vs " + b.field()->label());
}

NFElem NFElem::operator-() const {
  NFElem r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

NFElem& NFElem::operator+=(const NFElem& o) {
  if (!field_->same(*o.field_)) {
    NFElem a = *this, b = o;
    align_fields(a, b);
    *this = a;
    return *this += b;
  }
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

NFElem& NFElem::operator-=(const NFElem& o) {
  if (!field_->same(*o.field_)) {
    NFElem a = *this, b = o;
    align_fields(a, b);
    *this = a;
    return *this -= b;
  }
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

NFElem& NFElem::operator*=(const Rational& c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

NFElem& NFElem::operator*=(const NFElem& o) {
  if (!field_->same(*o.field_)) {
    NFElem a = *this, b = o;
    align_fields(a, b);
    *this = a;
    return *this *= b;
  }
  int d = field_->degree();
  if (d == 1) {
    coeffs_[0] *= o.coeffs_[0];
    return *this;
  }
  std::vector<Rational> prod(2 * d - 1, Rational(0));
  for (int i = 0; i < d; ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (int j = 0; j < d; ++j) {
      if (o.coeffs_[j].is_zero()) continue;
      prod[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  const auto& rows = field_->power_rows();
  std::vector<Rational> red(d, Rational(0));
  for (int i = 0; i < d; ++i) red[i] = prod[i];
  for (int r = 0; r + d < static_cast<int>(prod.size()); ++r) {
    const Rational& c = prod[d + r];
    if (c.is_zero()) continue;
    for (int i = 0; i < d; ++i) red[i] += c * rows[r][i];
  }
  coeffs_ = std::move(red);
  return *this;
}

bool operator==(const NFElem& a, const NFElem& b) {
  if (a.field_->same(*b.field_)) return a.coeffs_ == b.coeffs_;
  NFElem x = a, y = b;
  align_fields(x, y);
  return x.coeffs_ == y.coeffs_;
}

NFElem NFElem::inv() const {
  if (is_zero()) throw DivisionByZero("inverse of zero field element");
  int d = field_->degree();
  if (d == 1) return NFElem(field_, coeffs_[0].inv());
  // extended Euclid: s*a + t*m = gcd = const, so a^{-1} = s/const mod m
  Poly a(coeffs_.begin(), coeffs_.end());
  trim(a);
  Poly m = [&] {
    const auto& mp = field_->minpoly();
    return Poly(mp.begin(), mp.end());
  }();
  Poly r0 = m, r1 = a;
  Poly s0 = {}, s1 = {Rational(1)};
  while (!r1.empty()) {
    auto [q, r2] = divmod(r0, r1);
    Poly s2 = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 = gcd; for a minimal polynomial it is a nonzero constant
  if (r0.size() != 1)
    throw DivisionByZero("element is a zero divisor; minimal polynomial not irreducible?");
  Rational c = r0[0].inv();
  std::vector<Rational> out(d, Rational(0));
  for (size_t i = 0; i < s0.size(); ++i) out[i] = s0[i] * c;
  return NFElem(field_, std::move(out));
}

NFElem NFElem::subst_gen(const NFElem& g) const {
  if (!field_->same(*g.field()))
    throw FieldMismatch("substitution image lives in a different field");
  NFElem acc(field_);
  for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i) {
    acc *= g;
    acc += NFElem(field_, coeffs_[i]);
  }
  return acc;
}

std::string NFElem::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const NFElem& e) {
  bool wrote = false;
  const std::string& g = e.field_->label();
  for (size_t i = 0; i < e.coeffs_.size(); ++i) {
    if (e.coeffs_[i].is_zero()) continue;
    if (wrote) os << " + ";
    os << e.coeffs_[i];
    if (i >= 1) os << "*" << g;
    if (i >= 2) os << "^" << i;
    wrote = true;
  }
  if (!wrote) os << "0";
  return os;
}

NFElem promote(const NFElem& x, const FieldPtr& target) {
  if (x.field().get() == target.get() || x.field()->same(*target))
    return NFElem(target, x.coeffs());
  if (x.is_rational()) return NFElem(target, x.rat());
  throw FieldMismatch("value does not lie in the target field");
}

}  // namespace gkv
