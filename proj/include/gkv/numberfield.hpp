#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gkv/rational.hpp"

namespace gkv {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// A number field Q[x]/(m(x)) given by a monic minimal polynomial.  Fields are
// compared structurally (same minpoly = same field); no factoring, no
// automatic extensions.
class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  // minpoly coefficients low degree first, last entry must be 1.
  static FieldPtr make(std::vector<Rational> minpoly, std::string label);

  static const FieldPtr& rationals();    // minpoly x, the field Q
  static const FieldPtr& gaussian();     // x^2 + 1, generator i
  static const FieldPtr& cyclotomic8();  // x^4 + 1, generator z8

  int degree() const { return static_cast<int>(minpoly_.size()) - 1; }
  const std::vector<Rational>& minpoly() const { return minpoly_; }
  const std::string& label() const { return label_; }

  bool same(const NumberField& o) const;

  // Row r holds the coefficients of x^(degree+r) reduced mod minpoly,
  // r = 0 .. degree-2.  Used by NFElem multiplication.
  const std::vector<std::vector<Rational>>& power_rows() const { return power_rows_; }

 private:
  NumberField(std::vector<Rational> minpoly, std::string label);
  std::vector<Rational> minpoly_;
  std::string label_;
  std::vector<std::vector<Rational>> power_rows_;
};

class NFElem {
 public:
  NFElem() : field_(NumberField::rationals()), coeffs_(1, Rational(0)) {}
  explicit NFElem(FieldPtr f) : field_(std::move(f)), coeffs_(field_->degree(), Rational(0)) {}
  NFElem(FieldPtr f, Rational c) : NFElem(std::move(f)) { coeffs_[0] = std::move(c); }
  NFElem(FieldPtr f, std::vector<Rational> coeffs);

  static NFElem gen(const FieldPtr& f);  // the class of x

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;  // all coeffs beyond the constant vanish
  const Rational& rat() const;  // constant coefficient (valid when is_rational)

  NFElem operator-() const;
  NFElem& operator+=(const NFElem& o);
  NFElem& operator-=(const NFElem& o);
  NFElem& operator*=(const NFElem& o);
  NFElem& operator/=(const NFElem& o) { return *this *= o.inv(); }
  NFElem& operator*=(const Rational& c);

  friend NFElem operator+(NFElem a, const NFElem& b) { return a += b; }
  friend NFElem operator-(NFElem a, const NFElem& b) { return a -= b; }
  friend NFElem operator*(NFElem a, const NFElem& b) { return a *= b; }
  friend NFElem operator/(NFElem a, const NFElem& b) { return a /= b; }
  friend NFElem operator*(NFElem a, const Rational& c) { return a *= c; }
  friend NFElem operator*(const Rational& c, NFElem a) { return a *= c; }

  friend bool operator==(const NFElem& a, const NFElem& b);
  friend bool operator!=(const NFElem& a, const NFElem& b) { return !(a == b); }

  NFElem inv() const;

  // Image under the field map sending the generator to g (same field).
  // Realizes e.g. complex conjugation z8 -> z8^-1 = -z8^3.
  NFElem subst_gen(const NFElem& g) const;

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const NFElem& e);

 private:
  FieldPtr field_;
  std::vector<Rational> coeffs_;  // length = field degree
};

// Promote to a common field: rational constants lift into any field; two
// genuine fields must agree structurally, else FieldMismatch.
void align_fields(NFElem& a, NFElem& b);

// Reinterpret x inside the target field: exact for rational values and for
// structurally identical fields, FieldMismatch otherwise.
NFElem promote(const NFElem& x, const FieldPtr& target);

}  // namespace gkv
