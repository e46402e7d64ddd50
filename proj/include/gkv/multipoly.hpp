#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gkv/numberfield.hpp"

namespace gkv {

using Exponents = std::vector<int>;

// Graded lexicographic order: higher total degree first, ties broken
// lexicographically on the exponent vector.  Gives a deterministic leading
// term and stable serialization.
struct GradedLex {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

// A rewrite rule lhs -> rhs applied whenever a monomial is divisible by lhs.
// The rules we use strictly reduce a well-founded measure (the paired-variable
// count), so exhaustive application terminates.
struct RewriteRule {
  Exponents lhs;
  std::map<Exponents, NFElem, GradedLex> rhs;
};

// Variable context shared by the polynomials of one computation: an ordered
// name list plus the rewrite rules that define its normal form.
class PolyRing {
 public:
  static std::shared_ptr<const PolyRing> make(FieldPtr field,
                                              std::vector<std::string> vars);
  // The unit-sphere ring in alpha, beta, alphabar, betabar with the relation
  // beta*betabar = 1 - alpha*alphabar.
  static std::shared_ptr<const PolyRing> sphere(const FieldPtr& field);

  // Attach one rule to a rule-less ring (builder-style, returns a new ring).
  std::shared_ptr<const PolyRing> with_rule(RewriteRule rule) const;

  const FieldPtr& field() const { return field_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  const std::vector<std::string>& vars() const { return vars_; }
  int var_index(const std::string& name) const;  // BadVariable if absent
  const std::vector<RewriteRule>& rules() const { return rules_; }
  bool same(const PolyRing& o) const;

 private:
  PolyRing() = default;
  FieldPtr field_;
  std::vector<std::string> vars_;
  std::vector<RewriteRule> rules_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}

  static MultiPoly constant(const RingPtr& ring, const NFElem& c);
  static MultiPoly constant(const RingPtr& ring, const Rational& c);
  static MultiPoly var(const RingPtr& ring, const std::string& name, int power = 1);
  static MultiPoly monomial(const RingPtr& ring, Exponents e, const NFElem& c);

  const RingPtr& ring() const { return ring_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;  // -1 for the zero polynomial
  size_t term_count() const { return terms_.size(); }
  const std::map<Exponents, NFElem, GradedLex>& terms() const { return terms_; }

  // Coefficient of a monomial (zero NFElem if absent).
  NFElem coeff(const Exponents& e) const;
  // The whole polynomial must be a constant; returns it.
  NFElem constant_value() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const NFElem& c);
  MultiPoly& operator*=(const Rational& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const MultiPoly& b) { return a *= b; }
  friend MultiPoly operator*(MultiPoly a, const NFElem& c) { return a *= c; }
  friend MultiPoly operator*(const NFElem& c, MultiPoly a) { return a *= c; }
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  // Simultaneous substitution var -> image.  Images must share one ring,
  // which becomes the result's ring; every variable needs an image.
  MultiPoly subst(const std::vector<MultiPoly>& images) const;

  // Partial derivative with respect to one variable.
  MultiPoly deriv(int var) const;

  // Exact power with small exponent.
  MultiPoly pow(int e) const;

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

  // Applies the ring's rewrite rules to fixpoint.  Arithmetic keeps values
  // normalized, so this is exposed mainly for the explicit normal-form entry
  // point and tests.
  void normalize();

 private:
  void add_term(const Exponents& e, const NFElem& c);
  RingPtr ring_;
  std::map<Exponents, NFElem, GradedLex> terms_;
};

// Normal form on the unit sphere: input must live in a sphere ring (or a ring
// whose variables are exactly the four sphere variables); every beta*betabar
// pair is rewritten to 1 - alpha*alphabar.  Idempotent.
MultiPoly su2_normal_form(const MultiPoly& p);

}  // namespace gkv
