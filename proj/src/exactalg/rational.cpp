#include "gkv/rational.hpp"

#include <ostream>
#include <sstream>

namespace gkv {

Rational Rational::from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(mpz_class(s));
    mpz_class n(s.substr(0, slash));
    mpz_class d(s.substr(slash + 1));
    return Rational(n, d);
  } catch (const std::invalid_argument&) {
    throw BadInput("cannot parse rational: " + s);
  }
}

std::string Rational::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  os << r.v_.get_num().get_str();
  if (r.v_.get_den() != 1) os << '/' << r.v_.get_den().get_str();
  return os;
}

std::size_t Rational::hash() const {
  // Cheap and stable: fold the low limbs of numerator and denominator.
  auto fold = [](const mpz_class& z) -> std::size_t {
    std::size_t h = mpz_size(z.get_mpz_t()) ? static_cast<std::size_t>(
        mpz_getlimbn(z.get_mpz_t(), 0)) : 0;
    return h ^ (static_cast<std::size_t>(mpz_sgn(z.get_mpz_t())) << 1);
  };
  return fold(v_.get_num()) * 1000003u + fold(v_.get_den());
}

Rational Rational::binom(long n, long k) {
  if (k < 0 || k > n) return Rational(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return Rational(b);
}

Rational Rational::factorial(long n) {
  if (n < 0) throw BadInput("factorial of negative integer");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

Rational Rational::pow(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  Rational b = e > 0 ? base : base.inv();
  long n = e > 0 ? e : -e;
  Rational acc(1);
  while (n > 0) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return acc;
}

}  // namespace gkv
