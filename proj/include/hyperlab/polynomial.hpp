#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "hyperlab/rational.hpp"

namespace hyperlab {

/// Dense univariate polynomial over the rationals. Index i holds the
/// coefficient of x^i; trailing zeros are trimmed so the zero polynomial is
/// the empty list.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& c) : coeffs_{c} { trim(); }
  Polynomial(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }
  explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(const Rational& c, std::size_t power) {
    std::vector<Rational> v(power + 1);
    v[power] = c;
    return Polynomial(std::move(v));
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }

  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  const Rational& leading() const { return coeffs_.back(); }

  /// Index of the lowest nonzero coefficient (order of vanishing at 0).
  std::size_t low_order() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i].sign() != 0) return i;
    return coeffs_.size();
  }
  const Rational& lowest() const { return coeffs_[low_order()]; }

  Rational operator()(const Rational& v) const {
    Rational acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * v + *it;
    return acc;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r[i] += b.coeffs_[i];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<Rational> r(a.coeffs_);
    for (auto& c : r) c = -c;
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].sign() == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Rational& s, const Polynomial& p) {
    if (s.sign() == 0) return {};
    std::vector<Rational> r(p.coeffs_);
    for (auto& c : r) c *= s;
    return Polynomial(std::move(r));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division: a = q*b + r with deg r < deg b.
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
    if (a.degree() < b.degree()) return {Polynomial{}, a};
    std::vector<Rational> rem(a.coeffs_);
    std::vector<Rational> quot(a.coeffs_.size() - b.coeffs_.size() + 1);
    const Rational& lead = b.leading();
    for (long k = static_cast<long>(quot.size()) - 1; k >= 0; --k) {
      Rational q = rem[k + b.degree()] / lead;
      quot[k] = q;
      if (q.sign() == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) rem[k + j] -= q * b.coeffs_[j];
    }
    rem.resize(b.coeffs_.size() - 1);
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  /// Monic greatest common divisor (zero if both are zero).
  friend Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
      auto r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    if (a.is_zero()) return a;
    return (Rational(1) / a.leading()) * a;
  }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> r(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) r[i - 1] = coeffs_[i] * static_cast<long>(i);
    return Polynomial(std::move(r));
  }

  /// Coefficients in reverse order, padded to `degree` (x^d p(1/x)).
  Polynomial reversed(std::size_t degree) const {
    std::vector<Rational> r(degree + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r[degree - i] = coeffs_[i];
    return Polynomial(std::move(r));
  }

  /// Cauchy bound: every real root has absolute value below this.
  Rational root_bound() const {
    Rational m;
    for (long i = 0; i < degree(); ++i) m = std::max(m, abs(coeffs_[i] / leading()));
    return m + 1;
  }

  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string out;
    for (long i = degree(); i >= 0; --i) {
      const Rational& c = coeffs_[i];
      if (c.sign() == 0) continue;
      Rational mag = abs(c);
      if (out.empty()) {
        if (c.sign() < 0) out += "-";
      } else {
        out += c.sign() < 0 ? " - " : " + ";
      }
      if (i == 0) {
        out += to_string(mag);
      } else {
        if (mag != 1) out += to_string(mag) + "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().sign() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

}  // namespace hyperlab
