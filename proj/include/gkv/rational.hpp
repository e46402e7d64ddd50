#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "gkv/errors.hpp"

namespace gkv {

// Arbitrary-precision rational, always in lowest terms with positive
// denominator.  mpq_class does not canonicalize on construction, so every
// entry point that could introduce a non-canonical value runs canonicalize().
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design
  Rational(long n, long d) {
    if (d == 0) throw DivisionByZero("rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
  }
  explicit Rational(const mpz_class& n) : v_(n) {}
  Rational(const mpz_class& n, const mpz_class& d) {
    if (d == 0) throw DivisionByZero("rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  // Accepts "n", "-n", "n/d".
  static Rational from_string(const std::string& s);

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  double to_double() const { return v_.get_d(); }
  std::string str() const;

  Rational operator-() const { return Rational(mpq_class(-v_), nocanon{}); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero("rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  Rational inv() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    return Rational(mpq_class(1) / v_, nocanon{});
  }
  Rational abs() const { return Rational(mpq_class(::abs(v_)), nocanon{}); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

  std::size_t hash() const;

  // n choose k as an exact rational (0 for k < 0 or k > n).
  static Rational binom(long n, long k);
  static Rational factorial(long n);
  static Rational pow(const Rational& base, long e);

 private:
  struct nocanon {};
  // GMP arithmetic on canonical operands stays canonical; skip the extra pass.
  Rational(const mpq_class& v, nocanon) : v_(v) {}
  mpq_class v_;
};

}  // namespace gkv

template <>
struct std::hash<gkv::Rational> {
  std::size_t operator()(const gkv::Rational& r) const { return r.hash(); }
};
