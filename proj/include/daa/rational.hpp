#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// Under C++20 rewritten comparisons, boost's mixed rational/integer
// operator== templates resolve to each other and recurse. Exact
// non-template overloads take precedence.
namespace boost {

inline bool operator==(const rational<std::int64_t>& a, int b) { return a == rational<std::int64_t>(b); }
inline bool operator==(const rational<std::int64_t>& a, long b) { return a == rational<std::int64_t>(b); }
inline bool operator==(int a, const rational<std::int64_t>& b) { return rational<std::int64_t>(a) == b; }
inline bool operator==(long a, const rational<std::int64_t>& b) { return rational<std::int64_t>(a) == b; }

}  // namespace boost

namespace daa {

// Exact money and weight arithmetic. Bid levels, geometry and set-cover duals
// all live here; only the routing duals fall back to double.
using Rational = boost::rational<std::int64_t>;

namespace detail {

inline std::int64_t parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
  }
  std::int64_t out = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
    }
    if (out > (std::numeric_limits<std::int64_t>::max() - (c - '0')) / 10) {
      throw std::invalid_argument("number out of range '" + std::string(whole) + "'");
    }
    out = out * 10 + (c - '0');
  }
  return out;
}

}  // namespace detail

/// Parses "7", "-3", "1.25" or "3/4" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = detail::parse_digits(body.substr(0, slash), text);
    auto den = detail::parse_digits(body.substr(slash + 1), text);
    if (den == 0) {
      throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    out = Rational(num, den);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto int_part = body.substr(0, dot);
    auto frac_part = body.substr(dot + 1);
    if (frac_part.size() > 18) {
      throw std::invalid_argument("too many decimals in '" + std::string(text) + "'");
    }
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    std::int64_t whole = int_part.empty() ? 0 : detail::parse_digits(int_part, text);
    std::int64_t frac = frac_part.empty() ? 0 : detail::parse_digits(frac_part, text);
    if (int_part.empty() && frac_part.empty()) {
      throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    }
    out = Rational(whole) + Rational(frac, scale);
  } else {
    out = Rational(detail::parse_digits(body, text));
  }
  return negative ? -out : out;
}

/// Canonical text form: "3" for integers, "3/4" otherwise.
inline std::string to_string(const Rational& value) {
  if (value.denominator() == 1) return std::to_string(value.numerator());
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

inline double to_double(const Rational& value) {
  return boost::rational_cast<double>(value);
}

}  // namespace daa
