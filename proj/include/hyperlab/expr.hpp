#pragma once

#include <cctype>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hyperlab/analytic.hpp"

namespace hyperlab {

enum class BinaryOp { Add, Sub, Mul, Div, Pow };

class Expr;

struct Literal {
  Rational value;
  friend bool operator==(const Literal&, const Literal&) = default;
};
struct Var {
  std::string name;
  friend bool operator==(const Var&, const Var&) = default;
};
struct Negate;
struct Binary;
struct Call;

/// Immutable expression tree. Copies share structure.
class Expr {
 public:
  using Node = std::variant<Literal, Var, Negate, Binary, Call>;

  Expr() = default;
  Expr(Literal l);
  Expr(Var v);
  Expr(Negate n);
  Expr(Binary b);
  Expr(Call c);

  const Node& node() const;

  template <class T>
  const T* as() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  std::shared_ptr<const Node> node_;
};

struct Negate {
  Expr operand;
};
struct Binary {
  BinaryOp op;
  Expr lhs;
  Expr rhs;  // for Pow, always a Literal exponent
};
struct Call {
  Function fn;
  Expr arg;
};

inline bool operator==(const Negate& a, const Negate& b) { return a.operand == b.operand; }
inline bool operator==(const Binary& a, const Binary& b) { return a.op == b.op && a.lhs == b.lhs && a.rhs == b.rhs; }
inline bool operator==(const Call& a, const Call& b) { return a.fn == b.fn && a.arg == b.arg; }

inline Expr::Expr(Literal l) : node_(std::make_shared<const Node>(std::move(l))) {}
inline Expr::Expr(Var v) : node_(std::make_shared<const Node>(std::move(v))) {}
inline Expr::Expr(Negate n) : node_(std::make_shared<const Node>(std::move(n))) {}
inline Expr::Expr(Binary b) : node_(std::make_shared<const Node>(std::move(b))) {}
inline Expr::Expr(Call c) : node_(std::make_shared<const Node>(std::move(c))) {}

inline const Expr::Node& Expr::node() const { return *node_; }

template <class T>
const T* Expr::as() const {
  return node_ ? std::get_if<T>(node_.get()) : nullptr;
}

inline bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  return *a.node_ == *b.node_;
}

// Builders.
inline Expr lit(const Rational& q) { return Literal{q}; }
inline Expr var(std::string name) { return Var{std::move(name)}; }
inline Expr neg(Expr e) { return Negate{std::move(e)}; }
inline Expr add(Expr a, Expr b) { return Binary{BinaryOp::Add, std::move(a), std::move(b)}; }
inline Expr sub(Expr a, Expr b) { return Binary{BinaryOp::Sub, std::move(a), std::move(b)}; }
inline Expr mul(Expr a, Expr b) { return Binary{BinaryOp::Mul, std::move(a), std::move(b)}; }
inline Expr div(Expr a, Expr b) { return Binary{BinaryOp::Div, std::move(a), std::move(b)}; }
inline Expr pow(Expr base, const Rational& exponent) { return Binary{BinaryOp::Pow, std::move(base), lit(exponent)}; }
inline Expr call(Function fn, Expr arg) { return Call{fn, std::move(arg)}; }

/// Exponent of a Pow node.
inline const Rational& exponent_of(const Binary& b) { return b.rhs.as<Literal>()->value; }

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr parse() {
    Expr e = expression();
    skip_ws();
    if (pos_ != src_.size()) unexpected({"operator", "end of input"});
    return e;
  }

 private:
  // expr := term (('+'|'-') term)*
  Expr expression() {
    Expr lhs = term();
    for (;;) {
      skip_ws();
      if (peek('+')) {
        ++pos_;
        lhs = add(std::move(lhs), term());
      } else if (peek('-')) {
        ++pos_;
        lhs = sub(std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  // term := factor (('*'|'/') factor)*
  Expr term() {
    Expr lhs = unary();
    for (;;) {
      skip_ws();
      if (peek('*')) {
        ++pos_;
        lhs = mul(std::move(lhs), unary());
      } else if (peek('/')) {
        ++pos_;
        lhs = div(std::move(lhs), unary());
      } else {
        return lhs;
      }
    }
  }

  // Unary minus sits above '^', so -x^2 is -(x^2).
  Expr unary() {
    skip_ws();
    if (peek('-')) {
      ++pos_;
      return neg(unary());
    }
    return power();
  }

  // factor := atom ('^' signed_number)?
  Expr power() {
    Expr base = atom();
    skip_ws();
    if (!peek('^')) return base;
    ++pos_;
    skip_ws();
    std::size_t start = pos_;
    bool negative = false;
    if (peek('-') || peek('+')) {
      negative = src_[pos_] == '-';
      ++pos_;
      skip_ws();
    }
    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      if (pos_ < src_.size() && (std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '('))
        fail(ErrorKind::NonIntegerExponent, "exponent at offset " + std::to_string(start) +
                                                " must be an integer or rational literal");
      unexpected({"number"});
    }
    Rational e = number();
    return pow(std::move(base), negative ? Rational(-e) : e);
  }

  // atom := number | ident | ident '(' expr ')' | '(' expr ')'
  Expr atom() {
    skip_ws();
    if (pos_ >= src_.size()) unexpected({"number", "identifier", "'('", "'-'"});
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lit(number());
    if (c == '(') {
      ++pos_;
      Expr inner = expression();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      std::string name(src_.substr(start, pos_ - start));
      skip_ws();
      if (!peek('(')) return var(std::move(name));
      auto fn = function_from_name(name);
      if (!fn) fail(ErrorKind::UnknownFunction, "unknown function '" + name + "' at offset " + std::to_string(start));
      ++pos_;
      Expr arg = expression();
      expect(')');
      return call(*fn, std::move(arg));
    }
    unexpected({"number", "identifier", "'('", "'-'"});
  }

  // decimal: digits ['.' digits] [('e'|'E') ['+'|'-'] digits]; rational: digits '/' digits (no spaces)
  Rational number() {
    std::size_t start = pos_;
    auto digits = [&] {
      std::size_t from = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      return pos_ - from;
    };
    std::size_t int_digits = digits();
    if (int_digits > 0 && peek('/') && pos_ + 1 < src_.size() &&
        std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
      ++pos_;
      digits();
      return parse_literal(start);
    }
    std::size_t frac_digits = 0;
    if (peek('.')) {
      ++pos_;
      frac_digits = digits();
    }
    if (int_digits + frac_digits == 0) unexpected({"number"});
    if ((peek('e') || peek('E')) && pos_ + 1 < src_.size()) {
      std::size_t p = pos_ + 1;
      if (src_[p] == '+' || src_[p] == '-') ++p;
      if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
        pos_ = p;
        digits();
      }
    }
    return parse_literal(start);
  }

  Rational parse_literal(std::size_t start) {
    try {
      return parse_rational(src_.substr(start, pos_ - start));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::DivisionByZero) throw;
      throw SyntaxError(start, {"number"}, "'" + std::string(src_.substr(start, pos_ - start)) + "'");
    }
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool peek(char c) const { return pos_ < src_.size() && src_[pos_] == c; }
  void expect(char c) {
    skip_ws();
    if (!peek(c)) unexpected({std::string("'") + c + "'"});
    ++pos_;
  }
  [[noreturn]] void unexpected(std::vector<std::string> expected) const {
    std::string found = pos_ >= src_.size() ? "end of input" : "'" + std::string(1, src_[pos_]) + "'";
    throw SyntaxError(pos_, std::move(expected), found);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

inline int precedence(const Expr& e) {
  if (const auto* b = e.as<Binary>()) {
    switch (b->op) {
      case BinaryOp::Add:
      case BinaryOp::Sub: return 1;
      case BinaryOp::Mul:
      case BinaryOp::Div: return 2;
      case BinaryOp::Pow: return 4;
    }
  }
  if (e.as<Negate>()) return 3;
  return 5;
}

inline std::string literal_text(const Rational& q) { return to_string(q); }

}  // namespace detail

/// Parses the expression language:
///   expr := term (('+'|'-') term)*      term := factor (('*'|'/') factor)*
///   factor := '-' factor | atom ('^' signed_number)?
///   atom := number | ident | ident '(' expr ')' | '(' expr ')'
/// `p/q` written without spaces is a single rational literal.
inline Expr parse(std::string_view src) { return detail::Parser(src).parse(); }

/// Canonical printer; parse(render(e)) == e for every tree the parser can
/// produce. Binary operators are spaced so that `1 / 2` (a division) and
/// `1/2` (a literal) stay distinct.
inline std::string render(const Expr& e) {
  struct Visitor {
    std::string operator()(const Literal& l) const { return detail::literal_text(l.value); }
    std::string operator()(const Var& v) const { return v.name; }
    std::string operator()(const Negate& n) const {
      std::string inner = render(n.operand);
      return "-" + (detail::precedence(n.operand) < 3 ? "(" + inner + ")" : inner);
    }
    std::string operator()(const Call& c) const {
      return std::string(function_name(c.fn)) + "(" + render(c.arg) + ")";
    }
    std::string operator()(const Binary& b) const {
      if (b.op == BinaryOp::Pow) {
        std::string base = render(b.lhs);
        bool wrap = detail::precedence(b.lhs) <= 4 || (b.lhs.as<Literal>() && b.lhs.as<Literal>()->value.sign() < 0);
        return (wrap ? "(" + base + ")" : base) + "^" + to_string(exponent_of(b));
      }
      int prec = (b.op == BinaryOp::Add || b.op == BinaryOp::Sub) ? 1 : 2;
      std::string l = render(b.lhs), r = render(b.rhs);
      if (detail::precedence(b.lhs) < prec) l = "(" + l + ")";
      if (detail::precedence(b.rhs) <= prec) r = "(" + r + ")";
      const char* op = b.op == BinaryOp::Add ? " + " : b.op == BinaryOp::Sub ? " - " : b.op == BinaryOp::Mul ? " * " : " / ";
      return l + op + r;
    }
  };
  return std::visit(Visitor{}, e.node());
}

/// Names of the free variables, sorted.
inline std::set<std::string> free_variables(const Expr& e) {
  std::set<std::string> out;
  struct Walker {
    std::set<std::string>& out;
    void operator()(const Literal&) const {}
    void operator()(const Var& v) const { out.insert(v.name); }
    void operator()(const Negate& n) const { std::visit(*this, n.operand.node()); }
    void operator()(const Call& c) const { std::visit(*this, c.arg.node()); }
    void operator()(const Binary& b) const {
      std::visit(*this, b.lhs.node());
      std::visit(*this, b.rhs.node());
    }
  };
  std::visit(Walker{out}, e.node());
  return out;
}

}  // namespace hyperlab
