#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "qharr/errors.hpp"

namespace qharr {

// Arbitrary-precision rational. GMP keeps results of arithmetic in lowest
// terms with a positive denominator; values built from raw num/den pairs go
// through make_rational() which canonicalizes.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw DivisionByZero();
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(Rational const& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Accepts "p", "-p", "p/q" with decimal integers. Leading '+' is allowed.
inline Rational parse_rational(std::string_view text) {
  auto bad = [&] { return ParseError("malformed rational '" + std::string(text) + "'"); };
  auto is_integer = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto const slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                         : text.substr(slash + 1);
  if (!is_integer(num) || !is_integer(den) || den.front() == '-' || den.front() == '+')
    throw bad();
  if (num.front() == '+') num.remove_prefix(1);
  BigInt n(std::string(num), 10);
  BigInt d(std::string(den), 10);
  if (d == 0) throw bad();
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace qharr
