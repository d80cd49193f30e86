#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ceps {

// Exact rational scalar. All arithmetic in the library is exact; nothing is
// ever rounded.
using Rational = mpq_class;

// Accepts "p", "-p" or "p/q" with decimal digits and q > 0. Anything else
// (whitespace, '+', signed denominators, empty fields) is rejected.
inline Rational parse_rational(const std::string& text) {
  const auto fail = [&](const std::string& why) -> Rational {
    throw std::invalid_argument("malformed rational \"" + text + "\": " + why);
  };
  if (text.empty()) return fail("empty string");

  const std::size_t slash = text.find('/');
  const std::string num =
      slash == std::string::npos ? text : text.substr(0, slash);
  const std::string den =
      slash == std::string::npos ? std::string("1") : text.substr(slash + 1);

  const auto digits_only = [](const std::string& s, std::size_t from) {
    if (s.size() == from) return false;
    for (std::size_t i = from; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (!digits_only(num, num.size() > 0 && num[0] == '-' ? 1 : 0))
    return fail("numerator must be an optionally signed decimal integer");
  if (!digits_only(den, 0)) return fail("denominator must be a decimal integer");

  Rational value(num + "/" + den);
  if (value.get_den() == 0) return fail("denominator is zero");
  value.canonicalize();
  return value;
}

// Canonical "p" / "p/q" form (denominator omitted when 1).
inline std::string to_string(const Rational& value) { return value.get_str(); }

inline Rational rational_abs(const Rational& value) {
  return value < 0 ? Rational(-value) : value;
}

}  // namespace ceps
