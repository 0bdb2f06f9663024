#pragma once

#include <random>
#include <string>
#include <vector>

#include "hyperlab/ratfunc.hpp"
#include "hyperlab/evaluate.hpp"

namespace testing_support {

using hyperlab::Polynomial;
using hyperlab::RatFunc;
using hyperlab::Rational;

/// Fixed-seed generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  Rational rational(long range = 20, long max_den = 9) {
    return Rational(integer(-range, range)) / Rational(integer(1, max_den));
  }
  Rational nonzero_rational(long range = 20, long max_den = 9) {
    for (;;) {
      Rational q = rational(range, max_den);
      if (q != 0) return q;
    }
  }

  Polynomial polynomial(long max_degree, long range = 6) {
    std::vector<Rational> c;
    long d = integer(0, max_degree);
    for (long i = 0; i <= d; ++i) c.push_back(rational(range, 4));
    return Polynomial(c);
  }

  RatFunc ratfunc(long max_degree = 3) {
    Polynomial den;
    do den = polynomial(max_degree); while (den.is_zero());
    return RatFunc(polynomial(max_degree), den);
  }

  RatFunc nonzero_ratfunc(long max_degree = 3) {
    for (;;) {
      RatFunc f = ratfunc(max_degree);
      if (!f.is_zero()) return f;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Raw coefficient-list product.
inline std::vector<Rational> convolve(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Rational> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

/// Power series of p/q at 0 by long division, lowest terms first (q(0) != 0).
inline std::vector<Rational> long_division(const std::vector<Rational>& p, const std::vector<Rational>& q, std::size_t n) {
  std::vector<Rational> rem(p);
  rem.resize(std::max(rem.size(), n + q.size()));
  std::vector<Rational> out;
  for (std::size_t k = 0; k < n; ++k) {
    Rational c = rem[k] / q[0];
    out.push_back(c);
    for (std::size_t j = 0; j < q.size(); ++j) rem[k + j] -= c * q[j];
  }
  return out;
}

/// Error kind thrown by fn; InvalidArgument doubles as "nothing thrown".
template <class F>
hyperlab::ErrorKind kind_of(F&& fn) {
  try {
    fn();
  } catch (const hyperlab::Error& e) {
    return e.kind();
  }
  return hyperlab::ErrorKind::InvalidArgument;
}

/// Random ASTs over `x` using only ring operations and integer powers.
inline hyperlab::Expr polynomial_ast(Gen& g, int depth) {
  using namespace hyperlab;
  if (depth == 0 || g.integer(0, 3) == 0)
    return g.coin() ? var("x") : lit(Rational(g.integer(0, 9)) / Rational(g.integer(1, 4)));
  switch (g.integer(0, 4)) {
    case 0: return add(polynomial_ast(g, depth - 1), polynomial_ast(g, depth - 1));
    case 1: return sub(polynomial_ast(g, depth - 1), polynomial_ast(g, depth - 1));
    case 2: return mul(polynomial_ast(g, depth - 1), polynomial_ast(g, depth - 1));
    case 3: return neg(polynomial_ast(g, depth - 1));
    default: return pow(polynomial_ast(g, depth - 1), Rational(g.integer(0, 3)));
  }
}

/// Random ASTs reachable by the parser: literals are non-negative, calls and
/// quotients and rational exponents included.
inline hyperlab::Expr any_ast(Gen& g, int depth) {
  using namespace hyperlab;
  if (depth == 0 || g.integer(0, 4) == 0) {
    switch (g.integer(0, 2)) {
      case 0: return var(g.coin() ? "x" : "y");
      case 1: return lit(Rational(g.integer(0, 99)));
      default: return lit(Rational(g.integer(0, 20)) / Rational(g.integer(1, 12)));
    }
  }
  static const Function fns[] = {Function::Exp, Function::Sin, Function::Cos, Function::Log,
                                 Function::Sqrt, Function::Atan, Function::Abs};
  switch (g.integer(0, 6)) {
    case 0: return add(any_ast(g, depth - 1), any_ast(g, depth - 1));
    case 1: return sub(any_ast(g, depth - 1), any_ast(g, depth - 1));
    case 2: return mul(any_ast(g, depth - 1), any_ast(g, depth - 1));
    case 3: return div(any_ast(g, depth - 1), any_ast(g, depth - 1));
    case 4: return neg(any_ast(g, depth - 1));
    case 5: return pow(any_ast(g, depth - 1), Rational(g.integer(-5, 5)) / Rational(g.integer(1, 3)));
    default: return call(fns[g.integer(0, 6)], any_ast(g, depth - 1));
  }
}

/// Plain MPFR evaluation at a real point, independent of the series code.
struct DecimalBackend {
  using value_type = hyperlab::Decimal;
  unsigned digits = 60;

  hyperlab::Decimal literal(const Rational& q) const { return hyperlab::Decimal(q, digits); }
  hyperlab::Decimal divide(const hyperlab::Decimal& a, const hyperlab::Decimal& b) const { return a / b; }
  hyperlab::Decimal power(const hyperlab::Decimal& b, const Rational& p) const { return hyperlab::pow_value(b, p); }
  hyperlab::Decimal apply(hyperlab::Function f, const hyperlab::Decimal& v) const {
    return hyperlab::function_value(f, v);
  }
};

inline Rational factorial(long n) {
  Rational f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace testing_support
