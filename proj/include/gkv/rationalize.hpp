#pragma once

#include <optional>

#include "gkv/rational.hpp"

namespace gkv {

// Continued-fraction rational reconstruction: the first convergent p/q of x
// with q <= max_denominator and |x - p/q| <= tolerance, or nothing.  Any
// rational within 1/(2q^2) of x is one of its convergents, so a genuine
// rational of bounded height is always recovered.
std::optional<Rational> rationalize(double x, long max_denominator, double tolerance);

}  // namespace gkv
