#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "hyperlab/errors.hpp"

namespace hyperlab {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
/// Exact rational scalar. GMP keeps it reduced with a positive denominator,
/// and zero is always 0/1.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

inline int sign(const Rational& q) { return q.sign(); }

inline Rational abs(const Rational& q) { return q.sign() < 0 ? Rational(-q) : q; }

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator_of(q) == 1; }

/// Largest integer not exceeding q.
inline Integer floor_of(const Rational& q) {
  Integer n = numerator_of(q);
  Integer d = denominator_of(q);
  Integer f = n / d;  // truncates toward zero
  if (n.sign() < 0 && f * d != n) f -= 1;
  return f;
}

inline Rational pow_int(Rational base, long exponent) {
  if (exponent < 0) {
    if (base.sign() == 0) fail(ErrorKind::DivisionByZero, "zero raised to a negative power");
    base = Rational(1) / base;
    exponent = -exponent;
  }
  Rational result(1);
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

/// 2^e as an exact rational (e may be negative).
inline Rational pow2(long e) { return pow_int(Rational(2), e); }

inline std::string to_string(const Rational& q) { return q.str(); }

/// Parses "-3", "22/7", "1.25", "1e-6" or "-2.5E+3" exactly.
inline Rational parse_rational(std::string_view text) {
  auto bad = [&]() -> Rational {
    fail(ErrorKind::InvalidArgument, "not a rational number: '" + std::string(text) + "'");
  };
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::size_t end = text.size();
  while (end > i && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  std::string_view s = text.substr(i, end - i);
  if (s.empty()) return bad();

  bool negative = false;
  std::size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = s[pos] == '-';
    ++pos;
  }
  // GMP reads a leading 0 as an octal prefix, so strip it first.
  auto decimal_integer = [](std::string d) {
    std::size_t nz = d.find_first_not_of('0');
    return Integer(nz == std::string::npos ? std::string("0") : d.substr(nz));
  };
  auto digits = [&](std::size_t from) {
    std::size_t p = from;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    return p;
  };

  std::size_t int_end = digits(pos);
  std::string mantissa(s.substr(pos, int_end - pos));
  long scale = 0;
  pos = int_end;
  Rational value;
  if (pos < s.size() && s[pos] == '/') {
    std::size_t den_end = digits(pos + 1);
    if (mantissa.empty() || den_end == pos + 1 || den_end != s.size()) return bad();
    Integer den = decimal_integer(std::string(s.substr(pos + 1, den_end - pos - 1)));
    if (den == 0) fail(ErrorKind::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
    value = Rational(decimal_integer(mantissa), den);
  } else {
    if (pos < s.size() && s[pos] == '.') {
      std::size_t frac_end = digits(pos + 1);
      mantissa += std::string(s.substr(pos + 1, frac_end - pos - 1));
      scale = -static_cast<long>(frac_end - pos - 1);
      pos = frac_end;
    }
    if (mantissa.empty()) return bad();
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
      std::size_t p = pos + 1;
      bool exp_negative = false;
      if (p < s.size() && (s[p] == '+' || s[p] == '-')) {
        exp_negative = s[p] == '-';
        ++p;
      }
      std::size_t exp_end = digits(p);
      if (exp_end == p || exp_end - p > 6) return bad();
      long e = std::stol(std::string(s.substr(p, exp_end - p)));
      scale += exp_negative ? -e : e;
      pos = exp_end;
    }
    if (pos != s.size()) return bad();
    value = Rational(decimal_integer(mantissa)) * pow_int(Rational(10), scale);
  }
  return negative ? Rational(-value) : value;
}

}  // namespace hyperlab
