#pragma once

#include <algorithm>
#include <climits>
#include <concepts>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hyperlab/classification.hpp"
#include "hyperlab/decimal.hpp"
#include "hyperlab/ratfunc.hpp"

namespace hyperlab {

// Coefficient plumbing shared by the exact and approximate series modes.

inline Rational zero_like(const Rational&) { return Rational(0); }
inline Decimal zero_like(const Decimal& proto) { return Decimal(proto.digits()); }
inline Rational from_rational(const Rational& q, const Rational&) { return q; }
inline Decimal from_rational(const Rational& q, const Decimal& proto) { return Decimal(q, proto.digits()); }
inline bool is_zero_coeff(const Rational& q) { return q.sign() == 0; }
inline bool is_zero_coeff(const Decimal& d) { return d.is_zero(); }

template <class C>
concept Coefficient = requires(const C& a, const C& b, const Rational& q) {
  { a + b } -> std::convertible_to<C>;
  { a - b } -> std::convertible_to<C>;
  { a * b } -> std::convertible_to<C>;
  { a / b } -> std::convertible_to<C>;
  { -a } -> std::convertible_to<C>;
  { zero_like(a) } -> std::convertible_to<C>;
  { from_rational(q, a) } -> std::convertible_to<C>;
  { is_zero_coeff(a) } -> std::convertible_to<bool>;
  { sign(a) } -> std::convertible_to<int>;
  { to_string(a) } -> std::convertible_to<std::string>;
};

enum class SeriesMode { Exact, Approx };

enum class SeriesOrder { Less, Equal, Greater, Unknown };

constexpr std::string_view to_string(SeriesOrder o) {
  switch (o) {
    case SeriesOrder::Less: return "Less";
    case SeriesOrder::Equal: return "Equal";
    case SeriesOrder::Greater: return "Greater";
    case SeriesOrder::Unknown: return "Unknown";
  }
  return "?";
}

/// Truncated Laurent series in a positive infinitesimal e, with finitely many
/// negative powers.
///
/// Coefficients are stored for exponents lead, lead+1, ...; exponents past
/// the stored list and below `known_upto` are zero, exponents at or above
/// `known_upto` are unknown. A series whose window is unbounded is exact
/// finite data (a Laurent polynomial). Truncation only enters through
/// inversion and analytic extension, which cut the result `terms` past its
/// lead.
template <Coefficient C>
class Series {
 public:
  static constexpr int kUnbounded = INT_MAX;
  static constexpr int kDefaultTerms = 16;

  /// Exact zero.
  Series() : zero_(C{}) {}
  explicit Series(const C& proto) : zero_(zero_like(proto)) {}

  static Series constant(const C& c, int terms = 0) { return monomial(c, 0, terms); }

  static Series monomial(const C& c, int exponent, int terms = 0) {
    Series s(c);
    s.terms_ = terms;
    if (!is_zero_coeff(c)) {
      s.lead_ = exponent;
      s.coeffs_.push_back(c);
    }
    return s;
  }

  /// c + e, the point the infinitesimal calculus probes.
  static Series variable(const C& c, int terms = kDefaultTerms) {
    Series s(c);
    s.terms_ = terms;
    s.lead_ = 0;
    s.coeffs_ = {c, from_rational(Rational(1), c)};
    s.normalize();
    return s;
  }

  /// O(e^k): zero through exponent k-1, unknown from k.
  static Series big_o(int k, const C& proto, int terms = 0) {
    Series s(proto);
    s.known_upto_ = k;
    s.terms_ = terms;
    return s;
  }

  static Series from_coefficients(int lead, std::vector<C> coeffs, int known_upto, int terms) {
    if (coeffs.empty()) fail(ErrorKind::InvalidArgument, "series needs a prototype coefficient");
    Series s(coeffs.front());
    s.lead_ = lead;
    s.coeffs_ = std::move(coeffs);
    s.known_upto_ = known_upto;
    s.terms_ = terms;
    s.normalize();
    return s;
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_exact() const noexcept { return known_upto_ == kUnbounded; }
  bool is_exact_zero() const noexcept { return is_zero() && is_exact(); }
  int lead() const noexcept { return is_zero() ? known_upto_ : lead_; }
  int known_upto() const noexcept { return known_upto_; }
  int terms() const noexcept { return terms_; }
  int effective_terms() const noexcept { return terms_ > 0 ? terms_ : kDefaultTerms; }
  const C& zero() const noexcept { return zero_; }
  /// Stored coefficients, for exponents lead() onward.
  const std::vector<C>& coefficients() const noexcept { return coeffs_; }

  /// Coefficient of e^k; WindowTooSmall when k is past the known window.
  C coeff(int k) const {
    if (k >= known_upto_)
      fail(ErrorKind::WindowTooSmall, "coefficient of e^" + std::to_string(k) + " lies outside the window O(e^" +
                                          std::to_string(known_upto_) + ")");
    if (is_zero() || k < lead_ || k >= lead_ + static_cast<int>(coeffs_.size())) return zero_;
    return coeffs_[static_cast<std::size_t>(k - lead_)];
  }

  Series with_terms(int terms) const {
    Series s = *this;
    s.terms_ = terms;
    return s;
  }

  /// Forget everything at or above e^k.
  Series truncated(int k) const {
    if (k >= known_upto_) return *this;
    Series s = *this;
    s.known_upto_ = k;
    if (!s.is_zero()) {
      long keep = static_cast<long>(k) - s.lead_;
      if (keep <= 0) s.coeffs_.clear();
      else if (static_cast<std::size_t>(keep) < s.coeffs_.size()) s.coeffs_.resize(static_cast<std::size_t>(keep));
    }
    s.normalize();
    return s;
  }

  friend Series operator-(const Series& a) {
    Series r = a;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend Series operator+(const Series& a, const Series& b) {
    Series r(a.zero_);
    r.terms_ = std::max(a.terms_, b.terms_);
    r.known_upto_ = std::min(a.known_upto_, b.known_upto_);
    if (a.is_zero() && b.is_zero()) return r;
    int lo = std::min(a.lead(), b.lead());
    long hi = std::max(a.end(), b.end());
    hi = std::min<long>(hi, r.known_upto_);
    if (lo >= hi) return r;
    r.lead_ = lo;
    r.coeffs_.reserve(static_cast<std::size_t>(hi - lo));
    for (long k = lo; k < hi; ++k) r.coeffs_.push_back(a.stored(k) + b.stored(k));
    r.normalize();
    return r;
  }
  friend Series operator-(const Series& a, const Series& b) { return a + (-b); }

  friend Series operator*(const Series& a, const Series& b) {
    Series r(a.zero_);
    r.terms_ = std::max(a.terms_, b.terms_);
    r.known_upto_ = std::min(sat_add(a.known_upto_, b.lead()), sat_add(b.known_upto_, a.lead()));
    if (a.is_zero() || b.is_zero()) return r;
    r.lead_ = a.lead_ + b.lead_;
    long n = static_cast<long>(a.coeffs_.size() + b.coeffs_.size()) - 1;
    if (r.known_upto_ != kUnbounded) n = std::min<long>(n, static_cast<long>(r.known_upto_) - r.lead_);
    if (n <= 0) return r.cleared();
    r.coeffs_.assign(static_cast<std::size_t>(n), a.zero_);
    for (std::size_t i = 0; i < a.coeffs_.size() && static_cast<long>(i) < n; ++i) {
      if (is_zero_coeff(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size() && static_cast<long>(i + j) < n; ++j)
        r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    r.normalize();
    return r;
  }

  /// 1/s, cut `effective_terms()` past its lead unless s is an exact monomial.
  Series inverse() const {
    if (is_exact_zero()) fail(ErrorKind::DivisionByZero, "division by the zero series");
    if (is_zero())
      fail(ErrorKind::EmptyWindow, "divisor O(e^" + std::to_string(known_upto_) + ") has no certified nonzero term");
    Series r(zero_);
    r.terms_ = terms_;
    r.lead_ = -lead_;
    if (is_exact() && coeffs_.size() == 1) {
      r.coeffs_ = {from_rational(Rational(1), zero_) / coeffs_[0]};
      return r;
    }
    int relative = is_exact() ? effective_terms() : known_upto_ - lead_;
    r.known_upto_ = r.lead_ + relative;
    C inv0 = from_rational(Rational(1), zero_) / coeffs_[0];
    r.coeffs_.reserve(static_cast<std::size_t>(relative));
    r.coeffs_.push_back(inv0);
    for (int n = 1; n < relative; ++n) {
      C acc = zero_;
      for (int k = 1; k <= n && k < static_cast<int>(coeffs_.size()); ++k)
        acc += coeffs_[static_cast<std::size_t>(k)] * r.coeffs_[static_cast<std::size_t>(n - k)];
      r.coeffs_.push_back(-(acc * inv0));
    }
    r.normalize();
    return r;
  }

  friend Series operator/(const Series& a, const Series& b) {
    Series inv = b.inverse();
    inv.terms_ = std::max(inv.terms_, a.terms_);
    return a * inv;
  }

  Series& operator+=(const Series& b) { return *this = *this + b; }
  Series& operator-=(const Series& b) { return *this = *this - b; }
  Series& operator*=(const Series& b) { return *this = *this * b; }
  Series& operator/=(const Series& b) { return *this = *this / b; }

  Series pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Series result = constant(from_rational(Rational(1), zero_), terms_);
    Series base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e > 0) base *= base;
    }
    return result;
  }

  /// Structural identity, window included.
  friend bool operator==(const Series& a, const Series& b) {
    return a.known_upto_ == b.known_upto_ && a.lead() == b.lead() && a.coeffs_ == b.coeffs_;
  }

  Classification classify() const {
    if (is_exact_zero()) return Classification::Zero;
    if (is_zero())
      fail(ErrorKind::EmptyWindow, "O(e^" + std::to_string(known_upto_) + ") cannot be told apart from zero");
    return classify_by_order(lead_, sign(coeffs_.front()));
  }

  C standard_part() const {
    if (!is_zero() && lead_ < 0)
      fail(ErrorKind::NotFinite, "standard part is defined only for finite elements; this series has a e^" +
                                     std::to_string(lead_) + " term");
    if (is_zero() && known_upto_ <= 0)
      fail(ErrorKind::EmptyWindow, "the constant term of O(e^" + std::to_string(known_upto_) + ") is unknown");
    return coeff(0);
  }

  /// `2 - 1*e^1 + 1*e^2 + O(e^16)`; the O-term only appears for finite windows.
  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const C& c = coeffs_[i];
      if (is_zero_coeff(c)) continue;
      int k = lead_ + static_cast<int>(i);
      bool negative = sign(c) < 0;
      std::string mag = to_string(negative ? C(-c) : c);
      if (out.empty()) out += negative ? "-" : "";
      else out += negative ? " - " : " + ";
      out += mag;
      if (k != 0) out += "*e^" + std::to_string(k);
    }
    if (!is_exact()) {
      if (!out.empty()) out += " + ";
      out += "O(e^" + std::to_string(known_upto_) + ")";
    }
    return out.empty() ? "0" : out;
  }

 private:
  static int sat_add(int a, int b) {
    if (a == kUnbounded || b == kUnbounded) return kUnbounded;
    long s = static_cast<long>(a) + b;
    return s >= kUnbounded ? kUnbounded - 1 : static_cast<int>(s);
  }

  long end() const { return is_zero() ? LONG_MIN : lead_ + static_cast<long>(coeffs_.size()); }

  C stored(long k) const {
    if (is_zero() || k < lead_ || k >= end()) return zero_;
    return coeffs_[static_cast<std::size_t>(k - lead_)];
  }

  Series cleared() const {
    Series r = *this;
    r.coeffs_.clear();
    return r;
  }

  void normalize() {
    std::size_t first = 0;
    while (first < coeffs_.size() && is_zero_coeff(coeffs_[first])) ++first;
    if (first == coeffs_.size()) {
      coeffs_.clear();
      lead_ = 0;
      return;
    }
    if (first > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(first));
      lead_ += static_cast<int>(first);
    }
    while (is_zero_coeff(coeffs_.back())) coeffs_.pop_back();
  }

  int lead_ = 0;
  std::vector<C> coeffs_;
  int known_upto_ = kUnbounded;
  int terms_ = 0;
  C zero_;
};

using ExactSeries = Series<Rational>;
using ApproxSeries = Series<Decimal>;

template <Coefficient C>
SeriesOrder series_compare(const Series<C>& a, const Series<C>& b) {
  Series<C> d = a - b;
  if (d.is_exact_zero()) return SeriesOrder::Equal;
  if (d.is_zero()) return SeriesOrder::Unknown;
  return sign(d.coeff(d.lead())) < 0 ? SeriesOrder::Less : SeriesOrder::Greater;
}

/// Laurent expansion of f at 0 with x mapped to e.
inline ExactSeries embed_ratfunc(const RatFunc& f, int terms = ExactSeries::kDefaultTerms) {
  auto poly = [&](const Polynomial& p) {
    if (p.is_zero()) return ExactSeries();
    return ExactSeries::from_coefficients(0, p.coefficients(), ExactSeries::kUnbounded, terms);
  };
  return poly(f.num()) / poly(f.den());
}

/// Exact series re-expressed with approximate coefficients.
inline ApproxSeries to_approx(const ExactSeries& s, unsigned digits) {
  Decimal proto(digits);
  if (s.is_zero()) return ApproxSeries::big_o(s.known_upto(), proto, s.terms());
  std::vector<Decimal> coeffs;
  coeffs.reserve(s.coefficients().size());
  for (const auto& c : s.coefficients()) coeffs.emplace_back(c, digits);
  return ApproxSeries::from_coefficients(s.lead(), std::move(coeffs), s.known_upto(), s.terms());
}

}  // namespace hyperlab
