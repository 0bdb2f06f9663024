#pragma once

#include <functional>
#include <map>
#include <string>
#include <variant>

#include "hyperlab/expr.hpp"

namespace hyperlab {

template <class Value>
using Bindings = std::map<std::string, Value, std::less<>>;

/// Exact rational arithmetic at real points. Functions answer only where
/// the value is rational; `abs` is available here and nowhere else.
struct RealExactBackend {
  using value_type = Rational;

  Rational literal(const Rational& q) const { return q; }
  Rational divide(const Rational& a, const Rational& b) const {
    if (b.sign() == 0) fail(ErrorKind::DivisionByZero, "division by zero");
    return a / b;
  }
  Rational power(const Rational& base, const Rational& p) const { return pow_value(base, p); }
  Rational apply(Function f, const Rational& v) const { return function_value(f, v); }
};

/// The ordered field Q(x): rational operations only.
struct RatFuncBackend {
  using value_type = RatFunc;

  RatFunc literal(const Rational& q) const { return RatFunc(q); }
  RatFunc divide(const RatFunc& a, const RatFunc& b) const { return a / b; }
  RatFunc power(const RatFunc& base, const Rational& p) const {
    if (!is_integer(p))
      fail(ErrorKind::NotAvailable, "rational power " + to_string(p) + " is not available in Q(x)");
    return base.pow(numerator_of(p).convert_to<long>());
  }
  RatFunc apply(Function f, const RatFunc&) const {
    fail(ErrorKind::NotAvailable, std::string(function_name(f)) +
                                      " is transcendental or non-analytic and cannot be extended in Q(x); "
                                      "use the series backend");
  }
};

/// Truncated Laurent series. `terms` is the relative truncation used by
/// inversion and analytic extension; `digits` the precision tag of
/// approximate coefficients.
template <Coefficient C>
struct SeriesBackend {
  using value_type = Series<C>;

  int terms = Series<C>::kDefaultTerms;
  unsigned digits = Decimal::kDefaultDigits;

  C coefficient(const Rational& q) const {
    if constexpr (std::is_same_v<C, Decimal>) return Decimal(q, digits);
    else return q;
  }
  Series<C> literal(const Rational& q) const { return Series<C>::constant(coefficient(q), terms); }
  Series<C> divide(const Series<C>& a, const Series<C>& b) const { return a / b; }
  Series<C> power(const Series<C>& base, const Rational& p) const { return extend_power(base, p); }
  Series<C> apply(Function f, const Series<C>& v) const { return extend_analytic(f, v); }

  /// e itself, at the backend's truncation.
  Series<C> epsilon() const { return Series<C>::monomial(coefficient(Rational(1)), 1, terms); }
  /// c + e
  Series<C> variable_at(const Rational& c) const { return Series<C>::variable(coefficient(c), terms); }
};

using ExactSeriesBackend = SeriesBackend<Rational>;
using ApproxSeriesBackend = SeriesBackend<Decimal>;

/// Structural evaluation of `e` over `backend`.
template <class Backend>
typename Backend::value_type evaluate(const Expr& e, const Backend& backend,
                                      const Bindings<typename Backend::value_type>& bindings) {
  using V = typename Backend::value_type;
  struct Visitor {
    const Backend& backend;
    const Bindings<V>& bindings;

    V operator()(const Literal& l) const { return backend.literal(l.value); }
    V operator()(const Var& v) const {
      auto it = bindings.find(v.name);
      if (it == bindings.end()) fail(ErrorKind::UnboundVariable, "variable '" + v.name + "' is not bound");
      return it->second;
    }
    V operator()(const Negate& n) const { return -std::visit(*this, n.operand.node()); }
    V operator()(const Call& c) const {
      if (c.fn == Function::BigO) return big_o(c);
      return backend.apply(c.fn, std::visit(*this, c.arg.node()));
    }
    V operator()(const Binary& b) const {
      V lhs = std::visit(*this, b.lhs.node());
      if (b.op == BinaryOp::Pow) return backend.power(lhs, exponent_of(b));
      V rhs = std::visit(*this, b.rhs.node());
      switch (b.op) {
        case BinaryOp::Add: return lhs + rhs;
        case BinaryOp::Sub: return lhs - rhs;
        case BinaryOp::Mul: return lhs * rhs;
        case BinaryOp::Div: return backend.divide(lhs, rhs);
        case BinaryOp::Pow: break;
      }
      return lhs;
    }

    // O(e^k) in a series literal: the argument must evaluate to exactly e^k.
    V big_o(const Call& c) const {
      if constexpr (requires(const V& s) { s.known_upto(); }) {
        V arg = std::visit(*this, c.arg.node());
        if (!arg.is_exact() || arg.coefficients().size() != 1 || arg.coefficients().front() != backend.coefficient(Rational(1)))
          fail(ErrorKind::InvalidArgument, "O(...) expects a bare power of e such as O(e^16)");
        return V::big_o(arg.lead(), arg.zero(), backend.terms);
      } else {
        fail(ErrorKind::NotAvailable, "O(...) is only meaningful on the series backend");
      }
    }
  };
  return std::visit(Visitor{backend, bindings}, e.node());
}

enum class BackendKind { RealExact, RatFunc, Series };

}  // namespace hyperlab
