#pragma once

#include <string>

#include "hyperlab/expr.hpp"

namespace hyperlab {

namespace detail {

inline bool is_literal(const Expr& e, long v) {
  const auto* l = e.as<Literal>();
  return l && l->value == v;
}

// Constructors that fold literals and drop 0/1 identities.
inline Expr s_add(Expr a, Expr b) {
  if (is_literal(a, 0)) return b;
  if (is_literal(b, 0)) return a;
  if (a.as<Literal>() && b.as<Literal>()) return lit(a.as<Literal>()->value + b.as<Literal>()->value);
  return add(std::move(a), std::move(b));
}
inline Expr s_neg(Expr a) {
  if (const auto* l = a.as<Literal>()) return lit(-l->value);
  if (const auto* n = a.as<Negate>()) return n->operand;
  return neg(std::move(a));
}
inline Expr s_sub(Expr a, Expr b) {
  if (is_literal(b, 0)) return a;
  if (is_literal(a, 0)) return s_neg(std::move(b));
  if (a.as<Literal>() && b.as<Literal>()) return lit(a.as<Literal>()->value - b.as<Literal>()->value);
  return sub(std::move(a), std::move(b));
}
inline Expr s_mul(Expr a, Expr b) {
  if (is_literal(a, 0) || is_literal(b, 0)) return lit(Rational(0));
  if (is_literal(a, 1)) return b;
  if (is_literal(b, 1)) return a;
  if (a.as<Literal>() && b.as<Literal>()) return lit(a.as<Literal>()->value * b.as<Literal>()->value);
  if (b.as<Literal>() && !a.as<Literal>()) return mul(std::move(b), std::move(a));
  return mul(std::move(a), std::move(b));
}
inline Expr s_div(Expr a, Expr b) {
  if (is_literal(b, 1)) return a;
  if (is_literal(a, 0)) return lit(Rational(0));
  if (a.as<Literal>() && b.as<Literal>() && b.as<Literal>()->value.sign() != 0)
    return lit(a.as<Literal>()->value / b.as<Literal>()->value);
  return div(std::move(a), std::move(b));
}
inline Expr s_pow(Expr base, const Rational& p) {
  if (p == 1) return base;
  if (p == 0) return lit(Rational(1));
  return pow(std::move(base), p);
}

}  // namespace detail

/// d/d`name` of `e` by the usual rules (sum, product, quotient, chain and
/// the function table). Only literal folding and 0/1 identities are
/// simplified. Used as an independent oracle for the infinitesimal
/// derivative.
inline Expr symbolic_diff(const Expr& e, const std::string& name) {
  using namespace detail;
  struct Visitor {
    const std::string& name;

    Expr d(const Expr& e) const { return std::visit(*this, e.node()); }

    Expr operator()(const Literal&) const { return lit(Rational(0)); }
    Expr operator()(const Var& v) const { return lit(Rational(v.name == name ? 1 : 0)); }
    Expr operator()(const Negate& n) const { return s_neg(d(n.operand)); }
    Expr operator()(const Binary& b) const {
      switch (b.op) {
        case BinaryOp::Add: return s_add(d(b.lhs), d(b.rhs));
        case BinaryOp::Sub: return s_sub(d(b.lhs), d(b.rhs));
        case BinaryOp::Mul: return s_add(s_mul(d(b.lhs), b.rhs), s_mul(b.lhs, d(b.rhs)));
        case BinaryOp::Div:
          return s_div(s_sub(s_mul(d(b.lhs), b.rhs), s_mul(b.lhs, d(b.rhs))), s_pow(b.rhs, Rational(2)));
        case BinaryOp::Pow: {
          const Rational& p = exponent_of(b);
          return s_mul(s_mul(lit(p), s_pow(b.lhs, p - 1)), d(b.lhs));
        }
      }
      return lit(Rational(0));
    }
    Expr operator()(const Call& c) const {
      const Expr& u = c.arg;
      Expr outer;
      switch (c.fn) {
        case Function::Exp: outer = call(Function::Exp, u); break;
        case Function::Sin: outer = call(Function::Cos, u); break;
        case Function::Cos: outer = s_neg(call(Function::Sin, u)); break;
        case Function::Log: outer = s_div(lit(Rational(1)), u); break;
        case Function::Sqrt: outer = s_div(lit(Rational(1)), s_mul(lit(Rational(2)), call(Function::Sqrt, u))); break;
        case Function::Atan: outer = s_div(lit(Rational(1)), s_add(lit(Rational(1)), s_pow(u, Rational(2)))); break;
        case Function::Abs:
        case Function::BigO:
          fail(ErrorKind::NonDifferentiableNode,
               std::string(function_name(c.fn)) + "(...) has no symbolic derivative");
      }
      return s_mul(outer, d(u));
    }
  };
  return Visitor{name}.d(e);
}

}  // namespace hyperlab
