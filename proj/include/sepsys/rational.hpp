#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "errors.hpp"

namespace sepsys {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, kept in lowest terms with positive
/// denominator by the backend.
using Rational = boost::multiprecision::cpp_rational;

/// Canonical "p/q" form, q > 0, lowest terms. Integers render as "p/1".
inline std::string format_rational(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Accepts "p" or "p/q" with decimal integers; q must be positive.
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    const BigInt p(text.substr(0, slash));
    const BigInt q(text.substr(slash + 1));
    if (q <= 0) throw InputError("rational denominator must be positive: " + text);
    return Rational(p, q);
  } catch (const std::runtime_error&) {
    throw InputError("malformed rational: " + text);
  }
}

}  // namespace sepsys
