#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "splink/core/errors.hpp"

namespace splink {

/// Exact arbitrary-precision rational used for lengths and interval endpoints.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

namespace detail {

inline Integer parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw ParseError("malformed number: \"" + std::string(whole) + "\"");
  Integer value = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("malformed number: \"" + std::string(whole) + "\"");
    value = value * 10 + (c - '0');
  }
  return value;
}

inline Integer pow10(unsigned n) {
  Integer p = 1;
  for (unsigned i = 0; i < n; ++i) p *= 10;
  return p;
}

}  // namespace detail

/// Parses "7", "-2", "3.5", ".25", "1e-3", "2.5E2" or "p/q" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty number");

  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = detail::parse_digits(text.substr(0, slash), whole);
    Integer den = detail::parse_digits(text.substr(slash + 1), whole);
    if (den == 0) throw ParseError("zero denominator: \"" + std::string(whole) + "\"");
    value = Rational(num, den);
  } else {
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_part = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
        exp_negative = exp_part.front() == '-';
        exp_part.remove_prefix(1);
      }
      if (exp_part.empty() || exp_part.size() > 6) throw ParseError("malformed exponent: \"" + std::string(whole) + "\"");
      exponent = static_cast<long>(detail::parse_digits(exp_part, whole));
      if (exp_negative) exponent = -exponent;
      text = text.substr(0, e);
    }
    std::string_view int_part = text;
    std::string_view frac_part;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      int_part = text.substr(0, dot);
      frac_part = text.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) throw ParseError("malformed number: \"" + std::string(whole) + "\"");
    Integer mantissa = int_part.empty() ? Integer(0) : detail::parse_digits(int_part, whole);
    if (!frac_part.empty()) {
      mantissa = mantissa * detail::pow10(static_cast<unsigned>(frac_part.size())) +
                 detail::parse_digits(frac_part, whole);
    }
    exponent -= static_cast<long>(frac_part.size());
    if (exponent >= 0) {
      value = Rational(mantissa * detail::pow10(static_cast<unsigned>(exponent)));
    } else {
      value = Rational(mantissa, detail::pow10(static_cast<unsigned>(-exponent)));
    }
  }
  return negative ? Rational(-value) : value;
}

/// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& value) {
  const Integer& num = boost::multiprecision::numerator(value);
  const Integer& den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double to_double(const Rational& value) { return value.convert_to<double>(); }

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

}  // namespace splink
