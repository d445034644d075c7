#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace flagvortex {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline bool is_integral(const Rational& q) { return denominator(q) == 1; }

inline Integer to_integer(const Rational& q) {
  if (!is_integral(q)) throw std::invalid_argument("expected an integer, got " + q.str());
  return numerator(q);
}

// Prints "p" for integers, "p/q" otherwise.
inline std::string rational_str(const Rational& q) { return q.str(); }

// Strict base-10 integer parse ([+-]?digits); avoids the octal reading a
// leading zero would otherwise trigger.
inline Integer parse_integer_decimal(const std::string& s) {
  size_t pos = 0;
  bool negative = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) negative = (s[pos++] == '-');
  if (pos == s.size()) throw std::invalid_argument("bad integer literal '" + s + "'");
  Integer v = 0;
  for (; pos < s.size(); ++pos) {
    if (s[pos] < '0' || s[pos] > '9')
      throw std::invalid_argument("bad integer literal '" + s + "'");
    v = v * 10 + (s[pos] - '0');
  }
  return negative ? -v : v;
}

// Accepts "p", "p/q", and plain decimals like "-0.25" (converted exactly).
inline Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Integer num = parse_integer_decimal(s.substr(0, slash));
    Integer den = parse_integer_decimal(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(parse_integer_decimal(s));
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  if (digits.empty() || digits == "-" || digits == "+")
    throw std::invalid_argument("cannot parse rational literal '" + text + "'");
  Integer den = 1;
  for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
  return Rational(parse_integer_decimal(digits), den);
}

// 64-bit FNV-1a, used to fingerprint config text in reports.
inline std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace flagvortex
