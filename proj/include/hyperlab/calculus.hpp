#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperlab/evaluate.hpp"

namespace hyperlab {

template <Coefficient C>
struct DerivativeResult {
  C value;
  /// (f(x0 + e) - f(x0)) / e before taking the standard part.
  Series<C> witness;
};

namespace detail {

template <Coefficient C>
Series<C> shifted_point(const SeriesBackend<C>& backend, const C& x0, const Rational& scale) {
  return Series<C>::from_coefficients(0, {x0, backend.coefficient(scale)}, Series<C>::kUnbounded,
                                      backend.terms);
}

template <Coefficient C>
Series<C> eval_at_point(const Expr& f, const std::string& name, const SeriesBackend<C>& backend,
                        const Series<C>& point) {
  Bindings<Series<C>> bindings{{name, point}};
  return evaluate(f, backend, bindings);
}

/// Difference quotient (f(x0 + h e) - f(x0)) / (h e).
template <Coefficient C>
Series<C> difference_quotient(const Expr& f, const std::string& name, const SeriesBackend<C>& backend,
                              const C& x0, const Rational& h) {
  Series<C> at_x0;
  try {
    at_x0 = eval_at_point(f, name, backend, Series<C>::constant(x0, backend.terms));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DivisionByZero) throw;
    fail(ErrorKind::NotDifferentiableHere, "f is not defined at x0 = " + to_string(x0) + ": " + e.what());
  }
  Series<C> diff = eval_at_point(f, name, backend, shifted_point(backend, x0, h)) - at_x0;
  if constexpr (std::is_same_v<C, Decimal>) {
    // Rounding can leave a residue in the constant term; clear it when it is
    // below the working precision of f(x0).
    if (!diff.is_zero() && diff.lead() == 0 && diff.known_upto() > 0) {
      Decimal residue = abs(diff.coeff(0));
      Decimal scale = abs(at_x0.is_zero() || at_x0.lead() != 0 ? Decimal(1L, backend.digits) : at_x0.coeff(0));
      if (scale < Decimal(1L, backend.digits)) scale = Decimal(1L, backend.digits);
      Decimal tol = scale * Decimal(Rational(1) / pow_int(Rational(10), static_cast<long>(backend.digits)), backend.digits);
      if (residue <= tol) diff = diff - Series<C>::constant(diff.coeff(0));
    }
  }
  Series<C> step = Series<C>::monomial(backend.coefficient(h), 1, backend.terms);
  Series<C> quotient = diff / step;
  if (!quotient.is_zero() && quotient.lead() < 0)
    fail(ErrorKind::NotDifferentiableHere,
         "the difference quotient at x0 = " + to_string(x0) + " is infinite: " + quotient.str());
  return quotient;
}

}  // namespace detail

/// f'(x0) = st((f(x0 + e) - f(x0)) / e). The standard part is recomputed
/// with e replaced by 2e and must agree.
template <Coefficient C>
DerivativeResult<C> derivative(const Expr& f, const C& x0, const SeriesBackend<C>& backend,
                               const std::string& name = "x") {
  Series<C> quotient = detail::difference_quotient(f, name, backend, x0, Rational(1));
  C value = quotient.standard_part();
  C doubled = detail::difference_quotient(f, name, backend, x0, Rational(2)).standard_part();
  bool same;
  if constexpr (std::is_same_v<C, Decimal>) same = agree_to_digits(value, doubled, backend.digits - 5);
  else same = value == doubled;
  if (!same)
    fail(ErrorKind::NotDifferentiableHere, "standard part depends on the infinitesimal: " + to_string(value) +
                                               " vs " + to_string(doubled));
  return {value, quotient};
}

inline DerivativeResult<Rational> derivative(const Expr& f, const Rational& x0, const std::string& name = "x") {
  return derivative(f, x0, ExactSeriesBackend{}, name);
}

/// Coefficients a_0..a_order of f(x0 + e); the k-th derivative is k! a_k.
template <Coefficient C>
std::vector<C> taylor(const Expr& f, const C& x0, int order, const SeriesBackend<C>& backend,
                      const std::string& name = "x") {
  if (order < 0) fail(ErrorKind::InvalidArgument, "taylor order must be non-negative");
  SeriesBackend<C> wide = backend;
  wide.terms = std::max(backend.terms, order + 1);
  Series<C> s = detail::eval_at_point(f, name, wide, Series<C>::variable(x0, wide.terms));
  if (!s.is_zero() && s.lead() < 0)
    fail(ErrorKind::NotDifferentiableHere, "f(x0 + e) is infinite: " + s.str());
  if (s.known_upto() <= order)
    fail(ErrorKind::WindowTooSmall, "only " + std::to_string(s.known_upto()) + " coefficients are certified");
  std::vector<C> out;
  out.reserve(static_cast<std::size_t>(order + 1));
  for (int k = 0; k <= order; ++k) out.push_back(s.coeff(k));
  return out;
}

/// k-th derivative from the Taylor coefficients.
template <Coefficient C>
C nth_derivative(const Expr& f, const C& x0, int k, const SeriesBackend<C>& backend, const std::string& name = "x") {
  std::vector<C> a = taylor(f, x0, k, backend, name);
  Rational factorial(1);
  for (int i = 2; i <= k; ++i) factorial *= i;
  return a.back() * backend.coefficient(factorial);
}

enum class Side { Above, Below };

template <Coefficient C>
struct LimitResult {
  enum class Kind { Finite, PositiveInfinite, NegativeInfinite, NoLimit };
  Kind kind;
  std::optional<C> value;
};

/// st(f(x0 + e)) from above, st(f(x0 - e)) from below.
template <Coefficient C>
LimitResult<C> limit_at(const Expr& f, const C& x0, Side side, const SeriesBackend<C>& backend,
                        const std::string& name = "x") {
  using R = LimitResult<C>;
  Series<C> s = detail::eval_at_point(f, name, backend, detail::shifted_point(backend, x0, side == Side::Above ? 1 : -1));
  if (s.is_zero()) {
    if (s.known_upto() <= 0) return {R::Kind::NoLimit, std::nullopt};
    return {R::Kind::Finite, s.zero()};
  }
  if (s.lead() < 0)
    return {sign(s.coeff(s.lead())) > 0 ? R::Kind::PositiveInfinite : R::Kind::NegativeInfinite, std::nullopt};
  return {R::Kind::Finite, s.standard_part()};
}

}  // namespace hyperlab
