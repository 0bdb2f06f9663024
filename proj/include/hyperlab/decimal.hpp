#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <string>
#include <utility>

#include "hyperlab/rational.hpp"

namespace hyperlab {

/// Fixed-precision binary floating point sized to carry at least `digits`
/// significant decimal digits. The digit count is the value's precision tag;
/// results of mixed-precision arithmetic take the larger tag.
class Decimal {
 public:
  static constexpr unsigned kDefaultDigits = 50;
  static constexpr unsigned kMinimumDigits = 50;

  explicit Decimal(unsigned digits = kDefaultDigits) : digits_(effective(digits)) {
    mpfr_init2(value_, bits_for(digits_));
    mpfr_set_zero(value_, 1);
  }

  Decimal(const Rational& q, unsigned digits) : Decimal(digits) {
    mpfr_set_q(value_, q.backend().data(), MPFR_RNDN);
  }

  Decimal(long v, unsigned digits) : Decimal(digits) { mpfr_set_si(value_, v, MPFR_RNDN); }

  Decimal(const Decimal& other) : digits_(other.digits_) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }

  Decimal(Decimal&& other) noexcept : digits_(other.digits_) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_swap(value_, other.value_);
  }

  Decimal& operator=(const Decimal& other) {
    if (this != &other) {
      digits_ = other.digits_;
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
      mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
  }

  Decimal& operator=(Decimal&& other) noexcept {
    std::swap(digits_, other.digits_);
    mpfr_swap(value_, other.value_);
    return *this;
  }

  ~Decimal() { mpfr_clear(value_); }

  unsigned digits() const noexcept { return digits_; }
  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

  /// Decimal rendering with `sig` significant digits (defaults to the tag).
  std::string str(unsigned sig = 0) const {
    if (sig == 0) sig = digits_;
    if (is_zero()) return "0";
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", static_cast<int>(sig), value_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  friend Decimal operator-(const Decimal& a) {
    Decimal r(a.digits_);
    mpfr_neg(r.value_, a.value_, MPFR_RNDN);
    return r;
  }
  friend Decimal operator+(const Decimal& a, const Decimal& b) { return binary(a, b, mpfr_add); }
  friend Decimal operator-(const Decimal& a, const Decimal& b) { return binary(a, b, mpfr_sub); }
  friend Decimal operator*(const Decimal& a, const Decimal& b) { return binary(a, b, mpfr_mul); }
  friend Decimal operator/(const Decimal& a, const Decimal& b) {
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "division by an exact zero decimal");
    return binary(a, b, mpfr_div);
  }
  Decimal& operator+=(const Decimal& b) { return *this = *this + b; }
  Decimal& operator-=(const Decimal& b) { return *this = *this - b; }
  Decimal& operator*=(const Decimal& b) { return *this = *this * b; }
  Decimal& operator/=(const Decimal& b) { return *this = *this / b; }

  friend bool operator==(const Decimal& a, const Decimal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const Decimal& a, const Decimal& b) {
    if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.value_, b.value_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

  friend Decimal abs(const Decimal& a) { return unary(a, mpfr_abs); }
  friend Decimal exp(const Decimal& a) { return unary(a, mpfr_exp); }
  friend Decimal sin(const Decimal& a) { return unary(a, mpfr_sin); }
  friend Decimal cos(const Decimal& a) { return unary(a, mpfr_cos); }
  friend Decimal atan(const Decimal& a) { return unary(a, mpfr_atan); }
  friend Decimal log(const Decimal& a) {
    if (a.sign() <= 0) fail(ErrorKind::DomainError, "log of a non-positive value");
    return unary(a, mpfr_log);
  }
  friend Decimal sqrt(const Decimal& a) {
    if (a.sign() < 0) fail(ErrorKind::DomainError, "sqrt of a negative value");
    return unary(a, mpfr_sqrt);
  }
  /// a^p for a > 0, or a = 0 with p > 0.
  friend Decimal pow(const Decimal& a, const Rational& p) {
    if (a.sign() < 0 || (a.is_zero() && p.sign() <= 0))
      fail(ErrorKind::DomainError, "rational power outside its real domain");
    Decimal exponent(p, a.digits_);
    return binary(a, exponent, mpfr_pow);
  }

  /// True when a and b agree to `sig` significant digits relative to the
  /// larger magnitude (both exact zeros agree).
  friend bool agree_to_digits(const Decimal& a, const Decimal& b, unsigned sig) {
    if (a.is_zero() && b.is_zero()) return true;
    Decimal diff = abs(a - b);
    Decimal scale = std::max(abs(a), abs(b));
    Decimal tol = scale * Decimal(Rational(1) / pow_int(Rational(10), static_cast<long>(sig)),
                                  std::max(a.digits_, b.digits_));
    return diff <= tol;
  }

 private:
  using Unary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
  using Binary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

  static unsigned effective(unsigned digits) { return std::max(digits, kMinimumDigits); }

  // Ten guard digits on top of the tag.
  static mpfr_prec_t bits_for(unsigned digits) {
    return static_cast<mpfr_prec_t>(std::ceil((digits + 10) * 3.321928094887362)) + 1;
  }

  static Decimal unary(const Decimal& a, Unary op) {
    Decimal r(a.digits_);
    op(r.value_, a.value_, MPFR_RNDN);
    return r;
  }
  static Decimal binary(const Decimal& a, const Decimal& b, Binary op) {
    Decimal r(std::max(a.digits_, b.digits_));
    op(r.value_, a.value_, b.value_, MPFR_RNDN);
    return r;
  }

  unsigned digits_;
  mpfr_t value_;
};

inline int sign(const Decimal& d) { return d.sign(); }
inline std::string to_string(const Decimal& d) { return d.str(); }

/// pi at the given precision tag.
inline Decimal pi_decimal(unsigned digits) {
  Decimal one(1L, digits);
  return atan(one) * Decimal(4L, digits);
}

}  // namespace hyperlab
