#include "gkv/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

#include "gkv/errors.hpp"

namespace gkv {

bool GradedLex::operator()(const Exponents& a, const Exponents& b) const {
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da > db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](int x, int y) { return x > y; });
}

RingPtr PolyRing::make(FieldPtr field, std::vector<std::string> vars) {
  auto r = std::shared_ptr<PolyRing>(new PolyRing());
  r->field_ = std::move(field);
  r->vars_ = std::move(vars);
  return r;
}

RingPtr PolyRing::sphere(const FieldPtr& field) {
  auto base = make(field, {"alpha", "beta", "alphabar", "betabar"});
  RewriteRule rule;
  rule.lhs = {0, 1, 0, 1};  // beta * betabar
  rule.rhs[{0, 0, 0, 0}] = NFElem(field, Rational(1));
  rule.rhs[{1, 0, 1, 0}] = NFElem(field, Rational(-1));
  return base->with_rule(std::move(rule));
}

RingPtr PolyRing::with_rule(RewriteRule rule) const {
  auto r = std::shared_ptr<PolyRing>(new PolyRing());
  r->field_ = field_;
  r->vars_ = vars_;
  r->rules_ = rules_;
  r->rules_.push_back(std::move(rule));
  return r;
}

int PolyRing::var_index(const std::string& name) const {
  for (size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return static_cast<int>(i);
  throw BadVariable("no variable named '" + name + "' in this ring");
}

bool PolyRing::same(const PolyRing& o) const {
  if (this == &o) return true;
  if (!field_->same(*o.field_) || vars_ != o.vars_) return false;
  if (rules_.size() != o.rules_.size()) return false;
  for (size_t i = 0; i < rules_.size(); ++i) {
    if (rules_[i].lhs != o.rules_[i].lhs) return false;
    if (rules_[i].rhs.size() != o.rules_[i].rhs.size()) return false;
    auto it = o.rules_[i].rhs.begin();
    for (const auto& [e, c] : rules_[i].rhs) {
      if (e != it->first || c != it->second) return false;
      ++it;
    }
  }
  return true;
}

MultiPoly MultiPoly::constant(const RingPtr& ring, const NFElem& c) {
  MultiPoly p(ring);
  p.add_term(Exponents(ring->nvars(), 0), c);
  return p;
}

MultiPoly MultiPoly::constant(const RingPtr& ring, const Rational& c) {
  return constant(ring, NFElem(ring->field(), c));
}

MultiPoly MultiPoly::var(const RingPtr& ring, const std::string& name, int power) {
  Exponents e(ring->nvars(), 0);
  e[ring->var_index(name)] = power;
  return monomial(ring, std::move(e), NFElem(ring->field(), Rational(1)));
}

MultiPoly MultiPoly::monomial(const RingPtr& ring, Exponents e, const NFElem& c) {
  if (static_cast<int>(e.size()) != ring->nvars())
    throw BadVariable("exponent vector length != ring variable count");
  MultiPoly p(ring);
  p.add_term(e, c);
  p.normalize();
  return p;
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  const auto& lead = terms_.begin()->first;  // graded order: leading term is maximal
  return std::accumulate(lead.begin(), lead.end(), 0);
}

NFElem MultiPoly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  if (it == terms_.end()) return NFElem(ring_->field());
  return it->second;
}

NFElem MultiPoly::constant_value() const {
  if (terms_.empty()) return NFElem(ring_->field());
  if (terms_.size() != 1 || total_degree() != 0)
    throw BadInput("polynomial is not constant: " + str());
  return terms_.begin()->second;
}

void MultiPoly::add_term(const Exponents& e, const NFElem& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (!ring_) ring_ = o.ring_;
  if (o.terms_.empty()) return *this;
  if (!ring_->same(*o.ring_)) throw BadVariable("polynomials from different rings");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly& MultiPoly::operator*=(const NFElem& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  return *this *= NFElem(ring_ ? ring_->field() : NumberField::rationals(), c);
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  if (!ring_) ring_ = o.ring_;
  if (!ring_->same(*o.ring_)) throw BadVariable("polynomials from different rings");
  MultiPoly out(ring_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      Exponents e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  out.normalize();
  *this = std::move(out);
  return *this;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.terms_.empty() && b.terms_.empty()) return true;
  if (a.terms_.size() != b.terms_.size()) return false;
  if (!a.ring_->same(*b.ring_)) return false;
  auto it = b.terms_.begin();
  for (const auto& [e, c] : a.terms_) {
    if (e != it->first || c != it->second) return false;
    ++it;
  }
  return true;
}

void MultiPoly::normalize() {
  if (!ring_ || ring_->rules().empty()) return;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& rule : ring_->rules()) {
      for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        const Exponents& e = it->first;
        bool divisible = true;
        for (size_t i = 0; i < e.size(); ++i)
          if (e[i] < rule.lhs[i]) { divisible = false; break; }
        if (!divisible) continue;
        Exponents rest(e.size());
        for (size_t i = 0; i < e.size(); ++i) rest[i] = e[i] - rule.lhs[i];
        NFElem c = it->second;
        terms_.erase(it);
        for (const auto& [re, rc] : rule.rhs) {
          Exponents sum(rest.size());
          for (size_t i = 0; i < sum.size(); ++i) sum[i] = rest[i] + re[i];
          add_term(sum, c * rc);
        }
        changed = true;
        break;  // the map changed; restart the scan
      }
      if (changed) break;
    }
  }
}

MultiPoly MultiPoly::subst(const std::vector<MultiPoly>& images) const {
  if (static_cast<int>(images.size()) != ring_->nvars())
    throw BadVariable("substitution needs one image per variable");
  RingPtr target;
  for (const auto& im : images)
    if (im.ring()) { target = im.ring(); break; }
  if (!target) throw BadVariable("substitution images carry no ring");
  MultiPoly out(target);
  for (const auto& [e, c] : terms_) {
    MultiPoly term = MultiPoly::constant(target, c);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      term *= images[i].pow(e[i]);
    }
    out += term;
  }
  return out;
}

MultiPoly MultiPoly::deriv(int var) const {
  MultiPoly out(ring_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    out.add_term(d, c * Rational(e[var]));
  }
  out.normalize();
  return out;
}

MultiPoly MultiPoly::pow(int e) const {
  if (e < 0) throw BadInput("negative polynomial power");
  MultiPoly acc = MultiPoly::constant(ring_, Rational(1));
  for (int i = 0; i < e; ++i) acc *= *this;
  return acc;
}

std::string MultiPoly::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) {
  if (p.terms_.empty()) return os << "0";
  bool first = true;
  for (const auto& [e, c] : p.terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")";
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*" << p.ring_->vars()[i];
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os;
}

MultiPoly su2_normal_form(const MultiPoly& p) {
  static const std::vector<std::string> sphere_vars = {"alpha", "beta", "alphabar", "betabar"};
  if (!p.ring() || p.ring()->vars() != sphere_vars)
    throw BadVariable("su2_normal_form expects the sphere variables alpha, beta, alphabar, betabar");
  if (!p.ring()->rules().empty()) {
    MultiPoly q = p;
    q.normalize();
    return q;
  }
  // ring without the relation attached: move into a sphere ring
  auto target = PolyRing::sphere(p.ring()->field());
  MultiPoly q(target);
  for (const auto& [e, c] : p.terms()) q += MultiPoly::monomial(target, e, c);
  return q;
}

}  // namespace gkv
