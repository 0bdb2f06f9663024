#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperlab/series.hpp"

namespace hyperlab {

/// Functions known to the expression language. `BigO` is the series-literal
/// marker O(e^k).
enum class Function { Exp, Sin, Cos, Log, Sqrt, Atan, Abs, BigO };

constexpr std::string_view function_name(Function f) {
  switch (f) {
    case Function::Exp: return "exp";
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
    case Function::Log: return "log";
    case Function::Sqrt: return "sqrt";
    case Function::Atan: return "atan";
    case Function::Abs: return "abs";
    case Function::BigO: return "O";
  }
  return "?";
}

inline std::optional<Function> function_from_name(std::string_view name) {
  for (Function f : {Function::Exp, Function::Sin, Function::Cos, Function::Log, Function::Sqrt, Function::Atan,
                     Function::Abs, Function::BigO})
    if (function_name(f) == name) return f;
  return std::nullopt;
}

namespace detail {

[[noreturn]] inline void irrational(std::string_view what, const Rational& at) {
  fail(ErrorKind::ModeError, std::string(what) + "(" + to_string(at) +
                                 ") is irrational and cannot be represented exactly; use approx mode");
}

/// Exact k-th root of a non-negative integer, if there is one.
inline std::optional<Integer> exact_root(const Integer& n, unsigned long k) {
  Integer r;
  if (mpz_root(r.backend().data(), n.backend().data(), k) == 0) return std::nullopt;
  return r;
}

}  // namespace detail

// Values of the table functions at a standard point. The Rational overloads
// answer only where the value is rational and raise ModeError otherwise.

inline Rational exp_value(const Rational& c) {
  if (c.sign() != 0) detail::irrational("exp", c);
  return Rational(1);
}
inline Rational sin_value(const Rational& c) {
  if (c.sign() != 0) detail::irrational("sin", c);
  return Rational(0);
}
inline Rational cos_value(const Rational& c) {
  if (c.sign() != 0) detail::irrational("cos", c);
  return Rational(1);
}
inline Rational atan_value(const Rational& c) {
  if (c.sign() != 0) detail::irrational("atan", c);
  return Rational(0);
}
inline Rational log_value(const Rational& c) {
  if (c.sign() <= 0) fail(ErrorKind::DomainError, "log of non-positive " + to_string(c));
  if (c != 1) detail::irrational("log", c);
  return Rational(0);
}

/// c^p for rational p; negative c is admitted when p has an odd denominator.
inline Rational pow_value(const Rational& c, const Rational& p) {
  if (is_integer(p)) return pow_int(c, numerator_of(p).convert_to<long>());
  unsigned long root = denominator_of(p).convert_to<unsigned long>();
  long power = numerator_of(p).convert_to<long>();
  if (c.sign() == 0) {
    if (p.sign() < 0) fail(ErrorKind::DomainError, "zero raised to a negative power");
    return Rational(0);
  }
  bool negative = c.sign() < 0;
  if (negative && root % 2 == 0)
    fail(ErrorKind::DomainError, "even root of negative " + to_string(c));
  Rational mag = abs(c);
  auto n = detail::exact_root(numerator_of(mag), root);
  auto d = detail::exact_root(denominator_of(mag), root);
  if (!n || !d) fail(ErrorKind::ModeError, to_string(c) + "^(" + to_string(p) + ") is irrational; use approx mode");
  Rational base(*n, *d);
  if (negative) base = -base;
  return pow_int(base, power);
}
inline Rational sqrt_value(const Rational& c) {
  if (c.sign() < 0) fail(ErrorKind::DomainError, "sqrt of negative " + to_string(c));
  return pow_value(c, Rational(1, 2));
}

inline Decimal exp_value(const Decimal& c) { return exp(c); }
inline Decimal sin_value(const Decimal& c) { return sin(c); }
inline Decimal cos_value(const Decimal& c) { return cos(c); }
inline Decimal atan_value(const Decimal& c) { return atan(c); }
inline Decimal log_value(const Decimal& c) { return log(c); }
inline Decimal sqrt_value(const Decimal& c) { return sqrt(c); }
inline Decimal pow_value(const Decimal& c, const Rational& p) {
  if (c.sign() < 0) {
    if (is_integer(p) || denominator_of(p) % 2 == 0) {
      if (!is_integer(p)) fail(ErrorKind::DomainError, "even root of a negative value");
    } else {
      Decimal r = pow(abs(c), p);
      return numerator_of(p) % 2 == 0 ? r : Decimal(-r);
    }
  }
  if (is_integer(p)) {
    Decimal r = from_rational(Rational(1), c);
    long e = numerator_of(p).convert_to<long>();
    Decimal base = e < 0 ? from_rational(Rational(1), c) / c : c;
    for (long i = 0; i < (e < 0 ? -e : e); ++i) r *= base;
    return r;
  }
  return pow(c, p);
}

/// Value of a table function at a real point (exact or approximate).
template <Coefficient C>
C function_value(Function f, const C& c, const Rational& exponent = Rational(0)) {
  switch (f) {
    case Function::Exp: return exp_value(c);
    case Function::Sin: return sin_value(c);
    case Function::Cos: return cos_value(c);
    case Function::Log: return log_value(c);
    case Function::Sqrt: return sqrt_value(c);
    case Function::Atan: return atan_value(c);
    case Function::Abs: return sign(c) < 0 ? C(-c) : c;
    case Function::BigO: break;
  }
  (void)exponent;
  fail(ErrorKind::NotAvailable, "O(...) is only meaningful in a series literal");
}

namespace detail {

template <Coefficient C>
std::vector<C> binomial_taylor(const C& c, int count, const Rational& p);

/// Taylor coefficients t_0..t_{count-1} of f about c. `exponent` is used by
/// the rational-power case only.
template <Coefficient C>
std::vector<C> taylor_at(Function f, const C& c, int count, const Rational& exponent) {
  std::vector<C> t;
  t.reserve(static_cast<std::size_t>(count));
  const C one = from_rational(Rational(1), c);
  auto k_of = [&](int k) { return from_rational(Rational(k), c); };

  switch (f) {
    case Function::Exp: {
      C term = exp_value(c);
      for (int k = 0; k < count; ++k) {
        if (k > 0) term = term / k_of(k);
        t.push_back(term);
      }
      return t;
    }
    case Function::Sin:
    case Function::Cos: {
      C s = sin_value(c), co = cos_value(c);
      std::vector<C> cycle = f == Function::Sin ? std::vector<C>{s, co, -s, -co} : std::vector<C>{co, -s, -co, s};
      C inv_fact = one;
      for (int k = 0; k < count; ++k) {
        if (k > 0) inv_fact = inv_fact / k_of(k);
        t.push_back(cycle[static_cast<std::size_t>(k % 4)] * inv_fact);
      }
      return t;
    }
    case Function::Log: {
      if (sign(c) <= 0) fail(ErrorKind::DomainError, "log needs a positive standard part, got " + to_string(c));
      t.push_back(log_value(c));
      C inv = one / c, power = one;
      for (int k = 1; k < count; ++k) {
        power = power * inv;
        C term = power / k_of(k);
        t.push_back(k % 2 == 1 ? term : C(-term));
      }
      return t;
    }
    case Function::Sqrt:
      if (sign(c) <= 0) fail(ErrorKind::DomainError, "sqrt needs a positive standard part, got " + to_string(c));
      return binomial_taylor(c, count, Rational(1, 2));
    case Function::Abs:
    case Function::BigO:
      break;
    case Function::Atan: {
      t.push_back(atan_value(c));
      if (count <= 1) return t;
      // atan' = 1/(1 + x^2), expanded about c.
      Series<C> q = Series<C>::from_coefficients(0, {one + c * c, k_of(2) * c, one}, Series<C>::kUnbounded, count);
      Series<C> g = q.inverse();
      for (int k = 1; k < count; ++k) t.push_back(g.coeff(k - 1) / k_of(k));
      return t;
    }
  }
  (void)exponent;
  fail(ErrorKind::NotAvailable, std::string(function_name(f)) + " has no power series");
}

template <Coefficient C>
std::vector<C> binomial_taylor(const C& c, int count, const Rational& p) {
  if (sign(c) == 0) fail(ErrorKind::DomainError, "non-integer power is not analytic at 0");
  C scale = pow_value(c, p);
  C inv = from_rational(Rational(1), c) / c;
  std::vector<C> t;
  Rational binom(1);
  C power = from_rational(Rational(1), c);
  for (int k = 0; k < count; ++k) {
    if (k > 0) {
      binom = binom * (p - (k - 1)) / k;
      power = power * inv;
    }
    t.push_back(from_rational(binom, c) * scale * power);
  }
  return t;
}

}  // namespace detail

namespace detail {

/// Sum of t_k u^k for an infinitesimal u, cut at e^K. `coefficients(count)`
/// yields the first `count` Taylor coefficients.
template <Coefficient C, class Generator>
Series<C> compose_taylor(const Series<C>& s, std::string_view what, Generator coefficients) {
  if (!s.is_zero() && s.lead() < 0)
    fail(ErrorKind::NotFinite, std::string(what) +
                                   " extends only to finite arguments x + e with x real; the argument is infinite");
  const C c = s.standard_part();
  const Series<C> u = s - Series<C>::constant(c);
  const int terms = s.effective_terms();
  if (u.is_exact_zero()) return Series<C>::constant(coefficients(1).front(), s.terms());

  const long step = u.lead();  // >= 1; the window start for an O(e^k) remainder
  int window;
  std::vector<C> t;
  if (s.is_exact()) {
    // The lead of the result is step * (index of the first nonzero t_k).
    t = coefficients(terms + 1);
    int first = 0;
    while (first < static_cast<int>(t.size()) && is_zero_coeff(t[static_cast<std::size_t>(first)])) ++first;
    window = static_cast<int>(std::min<long>(step * first + terms, INT_MAX - 1));
  } else {
    window = s.known_upto();
  }
  const long needed = (window + step - 1) / step;
  if (static_cast<long>(t.size()) < needed) t = coefficients(static_cast<int>(needed));
  if (needed <= 0) return Series<C>::big_o(window, c, s.terms());

  Series<C> acc = Series<C>::constant(t[static_cast<std::size_t>(needed - 1)], s.terms());
  for (long k = needed - 2; k >= 0; --k)
    acc = (acc * u).truncated(window) + Series<C>::constant(t[static_cast<std::size_t>(k)], s.terms());
  Series<C> result = acc.truncated(window);
  return result.with_terms(s.terms());
}

}  // namespace detail

/// f(st(s) + u) for finite s: the Taylor series of f about st(s) composed
/// with the infinitesimal part u. An exact argument is cut `terms` past the
/// result's lead; an inexact one keeps its own window.
template <Coefficient C>
Series<C> extend_analytic(Function f, const Series<C>& s) {
  if (f == Function::Abs) fail(ErrorKind::NotAvailable, "abs is not analytic at 0 and has no series extension");
  if (f == Function::BigO) fail(ErrorKind::NotAvailable, "O(...) cannot be applied to a computed value");
  return detail::compose_taylor(s, function_name(f), [&](int count) {
    return detail::taylor_at(f, s.standard_part(), count, Rational(0));
  });
}

/// s^p for rational p. Integer powers stay exact multiplication; other
/// powers need a nonzero standard part.
template <Coefficient C>
Series<C> extend_power(const Series<C>& s, const Rational& p) {
  if (is_integer(p)) return s.pow(numerator_of(p).convert_to<long>());
  return detail::compose_taylor(s, "pow", [&](int count) {
    return detail::binomial_taylor(s.standard_part(), count, p);
  });
}

}  // namespace hyperlab
