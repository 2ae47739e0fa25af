#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace kht {

/// Ground ring. Everything that is not an integer degree is an exact rational.
using Rational = mpq_class;

std::string to_string(const Rational& value);

/// Accepts "p", "-p" and "p/q".
Rational parse_rational(std::string_view text);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace kht
