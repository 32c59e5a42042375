#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

namespace tropsys {

/// Arbitrary precision rational, always kept in lowest terms.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace detail

/// Parses an integer ("-12"), a decimal ("3.25", "-.5") or a fraction ("7/2").
/// Returns nullopt on anything else, including a zero denominator.
namespace detail {

/// Decimal digits to Integer. Boost reads a leading 0 as octal, so strip it.
inline Integer decimal_integer(std::string_view digits) {
  const auto first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return Integer(0);
  return Integer(std::string(digits.substr(first)));
}

}  // namespace detail

inline std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  std::string_view body = text;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) return std::nullopt;
    const Integer d = detail::decimal_integer(den);
    if (d == 0) return std::nullopt;
    value = Rational(detail::decimal_integer(num), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    if (!whole.empty() && !detail::all_digits(whole)) return std::nullopt;
    if (!frac.empty() && !detail::all_digits(frac)) return std::nullopt;
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
    value = Rational(detail::decimal_integer(std::string(whole) + std::string(frac)), scale);
  } else {
    if (!detail::all_digits(body)) return std::nullopt;
    value = Rational(detail::decimal_integer(body));
  }
  return negative ? Rational(-value) : value;
}

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1) {
    return boost::multiprecision::numerator(r).str();
  }
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

}  // namespace tropsys
