#include "gkv/rationalize.hpp"

#include <cmath>

#include "gkv/errors.hpp"

namespace gkv {

std::optional<Rational> rationalize(double x, long max_denominator, double tolerance) {
  if (!std::isfinite(x)) throw BadInput("rationalize of non-finite value");
  if (max_denominator < 1 || !(tolerance > 0))
    throw BadInput("rationalize needs max_denominator >= 1 and tolerance > 0");

  // convergents p_k/q_k of the continued fraction of x
  mpz_class p_prev = 0, q_prev = 1;  // p_{-2}/q_{-2}
  mpz_class p = 1, q = 0;            // p_{-1}/q_{-1}; first step lands on floor(x)
  double rem = x;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(rem);
    mpz_class a(fl);
    mpz_class p_next = a * p + p_prev;
    mpz_class q_next = a * q + q_prev;
    if (q_next > max_denominator) break;
    p_prev = p; q_prev = q;
    p = p_next; q = q_next;
    Rational cand(p, q);
    double err = std::fabs(x - cand.to_double());
    if (err <= tolerance) return cand;
    double frac = rem - fl;
    if (frac <= 0) break;  // exact at this depth; candidate already tested
    rem = 1.0 / frac;
    if (!std::isfinite(rem)) break;
  }
  return std::nullopt;
}

}  // namespace gkv
