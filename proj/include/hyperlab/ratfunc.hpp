#pragma once

#include <compare>
#include <string>
#include <utility>

#include "hyperlab/classification.hpp"
#include "hyperlab/polynomial.hpp"

namespace hyperlab {

/// Element of the ordered field Q(x) with x a positive infinitesimal.
///
/// Canonical form: numerator and denominator are coprime and the lowest
/// nonzero denominator coefficient is exactly 1, so two elements are equal
/// iff their representations are identical. The order is the one in which f
/// is positive when f(v) > 0 for every sufficiently small real v > 0; it is
/// decided by the signs of the lowest nonzero coefficients.
class RatFunc {
 public:
  RatFunc() : den_(Rational(1)) {}
  RatFunc(const Rational& c) : num_(c), den_(Rational(1)) {}
  RatFunc(long c) : RatFunc(Rational(c)) {}
  explicit RatFunc(Polynomial p) : num_(std::move(p)), den_(Rational(1)) {}
  RatFunc(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  /// The generator x.
  static RatFunc x() { return RatFunc(Polynomial{0, 1}); }

  const Polynomial& num() const noexcept { return num_; }
  const Polynomial& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_constant() const noexcept { return num_.degree() <= 0 && den_.degree() == 0; }
  bool is_polynomial() const noexcept { return den_.degree() == 0; }

  /// ord(num) - ord(den) at x = 0; meaningless for zero.
  long order() const {
    return static_cast<long>(num_.low_order()) - static_cast<long>(den_.low_order());
  }

  Sign low_order_sign() const {
    if (is_zero()) return Sign::Zero;
    return to_sign(num_.lowest().sign() * den_.lowest().sign());
  }

  Classification classify() const {
    if (is_zero()) return Classification::Zero;
    return classify_by_order(order(), static_cast<int>(low_order_sign()));
  }

  Rational standard_part() const {
    if (is_zero()) return Rational(0);
    long ord = order();
    if (ord < 0) fail(ErrorKind::NotFinite, "standard part is defined only for finite elements; " + str() + " is infinite");
    if (ord > 0) return Rational(0);
    return num_.lowest() / den_.lowest();
  }

  /// (f - c) / x
  RatFunc magnify(const Rational& center) const { return (*this - RatFunc(center)) / x(); }

  Rational eval_at(const Rational& v) const {
    Rational d = den_(v);
    if (d.sign() == 0) fail(ErrorKind::PoleAtPoint, "pole of " + str() + " at x = " + to_string(v));
    return num_(v) / d;
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a) {
    RatFunc r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "division by the zero element of Q(x)");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
  RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
  RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }
  RatFunc& operator/=(const RatFunc& b) { return *this = *this / b; }

  RatFunc pow(long e) const {
    if (e < 0) return RatFunc(1) / pow(-e);
    RatFunc result(1), base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend std::strong_ordering operator<=>(const RatFunc& a, const RatFunc& b) {
    switch ((a - b).low_order_sign()) {
      case Sign::Negative: return std::strong_ordering::less;
      case Sign::Positive: return std::strong_ordering::greater;
      case Sign::Zero: break;
    }
    return std::strong_ordering::equal;
  }

  std::string str(const std::string& var = "x") const {
    std::string n = num_.str(var);
    if (den_.degree() == 0 && den_.coeff(0) == 1) return n;
    auto wrap = [](const Polynomial& p, const std::string& s) {
      bool simple = p.degree() <= 0 || (p.degree() >= 1 && s.find_first_of(" ") == std::string::npos &&
                                         s.find('*') == std::string::npos && s[0] != '-');
      return simple ? s : "(" + s + ")";
    };
    return wrap(num_, n) + "/" + wrap(den_, den_.str(var));
  }

 private:
  void normalize() {
    if (den_.is_zero()) fail(ErrorKind::DivisionByZero, "zero denominator in Q(x)");
    if (num_.is_zero()) {
      den_ = Polynomial(Rational(1));
      return;
    }
    Polynomial g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
    Rational scale = Rational(1) / den_.lowest();
    if (scale != 1) {
      num_ = scale * num_;
      den_ = scale * den_;
    }
  }

  Polynomial num_;
  Polynomial den_;
};

struct FiniteDecomposition {
  Rational standard;
  RatFunc infinitesimal;
};

/// k = c + e with c real and e zero or infinitesimal.
inline FiniteDecomposition decompose_finite(const RatFunc& k) {
  Rational c = k.standard_part();
  return {c, k - RatFunc(c)};
}

inline Sign low_order_sign(const RatFunc& f) { return f.low_order_sign(); }
inline Classification classify(const RatFunc& f) { return f.classify(); }
inline Rational standard_part(const RatFunc& f) { return f.standard_part(); }
inline RatFunc magnify1d(const RatFunc& f, const Rational& c) { return f.magnify(c); }
inline Rational eval_at(const RatFunc& f, const Rational& v) { return f.eval_at(v); }
inline Ordering compare(const RatFunc& f, const RatFunc& g) { return to_ordering(f <=> g); }

}  // namespace hyperlab
