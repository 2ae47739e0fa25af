#include "khtangle/rational.hpp"

#include "khtangle/error.hpp"

namespace kht {

std::string to_string(const Rational& value) { return value.get_str(); }

Rational parse_rational(std::string_view text) {
  Rational r;
  if (text.empty() || r.set_str(std::string(text), 10) != 0 || r.get_den() == 0) {
    throw Error(ErrorCode::BadInput, "not a rational: '" + std::string(text) + "'");
  }
  r.canonicalize();
  return r;
}

}  // namespace kht
