#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "hyperlab/ratfunc.hpp"

namespace hyperlab {

/// A point of the plane over Q(e), where e is a positive infinitesimal and
/// N = 1/e is infinite.
struct HyperPoint2D {
  RatFunc x;
  RatFunc y;
  friend bool operator==(const HyperPoint2D&, const HyperPoint2D&) = default;
};

struct RealPoint {
  Rational x;
  Rational y;
  friend bool operator==(const RealPoint&, const RealPoint&) = default;
};

inline RatFunc infinite_N() { return RatFunc(1) / RatFunc::x(); }

/// Tooth index k = c*N + j of the saw with N teeth.
struct HyperIndex {
  Rational c;
  long j = 0;

  RatFunc value() const { return RatFunc(c) * infinite_N() + RatFunc(Rational(j)); }

  /// Throws IndexOutOfRange unless 0 <= k <= N - 1 in the field order.
  void validate() const {
    RatFunc k = value();
    if (k < RatFunc(0) || k > infinite_N() - RatFunc(1))
      fail(ErrorKind::IndexOutOfRange, "tooth index " + str() + " is outside 0 <= k <= N - 1");
  }

  std::string str() const {
    if (c == 0) return std::to_string(j);
    std::string out = (c == 1 ? std::string() : to_string(c) + "*") + "N";
    if (j > 0) out += " + " + std::to_string(j);
    if (j < 0) out += " - " + std::to_string(-j);
    return out;
  }
};

/// Parses "c,j", e.g. "1/2,0" or "0,3".
inline HyperIndex parse_hyper_index(std::string_view text) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos) fail(ErrorKind::InvalidArgument, "tooth must be given as \"c,j\"");
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  HyperIndex k{parse_rational(trim(text.substr(0, comma))), 0};
  Rational j = parse_rational(trim(text.substr(comma + 1)));
  if (!is_integer(j)) fail(ErrorKind::InvalidArgument, "the offset j of a tooth index must be an integer");
  k.j = static_cast<long>(numerator_of(j));
  if (k.c < 0 || k.c > 1) fail(ErrorKind::IndexOutOfRange, "c must lie in [0, 1]");
  return k;
}

enum class SawPhase { Start, TopOfRiser, EndOfTread };

constexpr std::string_view to_string(SawPhase p) {
  switch (p) {
    case SawPhase::Start: return "Start";
    case SawPhase::TopOfRiser: return "TopOfRiser";
    case SawPhase::EndOfTread: return "EndOfTread";
  }
  return "?";
}

/// Vertices of the finite saw l_n: (t,t), (t,t+1/n), (t+1/n,t+1/n) for t = k/n.
inline std::vector<RealPoint> luzin_saw_vertices(long n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "the saw needs at least one tooth");
  std::vector<RealPoint> v{{Rational(0), Rational(0)}};
  Rational step = Rational(1) / Rational(n);
  for (long k = 0; k < n; ++k) {
    Rational t = Rational(k) * step;
    v.push_back({t, t + step});
    v.push_back({t + step, t + step});
  }
  return v;
}

/// Vertex of the k-th tooth of the saw with N = 1/e teeth.
inline HyperPoint2D luzin_saw_hyper(const HyperIndex& k, SawPhase phase) {
  k.validate();
  RatFunc e = RatFunc::x();
  RatFunc t = k.value() * e;
  switch (phase) {
    case SawPhase::Start: return {t, t};
    case SawPhase::TopOfRiser: return {t, t + e};
    case SawPhase::EndOfTread: return {t + e, t + e};
  }
  return {t, t};
}

/// (factor*(p.x - center.x), factor*(p.y - center.y)).
inline HyperPoint2D microscope2d(const HyperPoint2D& p, const HyperPoint2D& center, const RatFunc& factor) {
  return {factor * (p.x - center.x), factor * (p.y - center.y)};
}

/// Componentwise standard part.
inline RealPoint shadow(const HyperPoint2D& p) {
  if (p.x.order() < 0) fail(ErrorKind::NotFinite, "x coordinate " + p.x.str("e") + " is infinite and has no shadow");
  if (p.y.order() < 0) fail(ErrorKind::NotFinite, "y coordinate " + p.y.str("e") + " is infinite and has no shadow");
  return {p.x.standard_part(), p.y.standard_part()};
}

/// Largest vertical distance from the diagonal and total length of l_n.
struct SawMeasures {
  Rational sup_deviation;
  Rational arc_length;
};

inline SawMeasures saw_limit_check(long n) {
  auto v = luzin_saw_vertices(n);
  SawMeasures m{Rational(0), Rational(0)};
  // Segments are axis-parallel and the deviation y - x is linear along each,
  // so vertices carry the supremum and lengths are exact.
  for (std::size_t i = 0; i < v.size(); ++i) {
    m.sup_deviation = std::max(m.sup_deviation, abs(v[i].y - v[i].x));
    if (i > 0) m.arc_length += abs(v[i].x - v[i - 1].x) + abs(v[i].y - v[i - 1].y);
  }
  return m;
}

namespace detail {

inline Rational frac(const Rational& q) { return q - Rational(floor_of(q)); }

inline Rational s1(const Rational& x) {
  Rational y = frac(x);
  return y <= Rational(1, 2) ? y : Rational(1) - y;
}

// Exponent a with denominator = 2^a * odd.
inline long two_adic_valuation(const Integer& d) {
  long a = 0;
  Integer m = d;
  while (m % 2 == 0) {
    m /= 2;
    ++a;
  }
  return a;
}

}  // namespace detail

/// s_n(x) = s_1(2^(n-1) x) / 2^(n-1), with s_1 the period-1 triangle wave.
inline Rational triangle_wave(long n, const Rational& x) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "triangle wave level must be at least 1");
  Rational scale = pow2(n - 1);
  return detail::s1(scale * x) / scale;
}

/// sup of s_n. It is linear between the breakpoints k/2^n and has period
/// 2^(1-n), so the breakpoints of one period suffice.
inline Rational triangle_sup(long n) {
  if (n < 1 || n > 62) fail(ErrorKind::InvalidArgument, "triangle wave level must lie in 1..62");
  Rational best = 0;
  for (long k = 0; k <= 2; ++k) best = std::max(best, triangle_wave(n, Rational(k) / pow2(n)));
  return best;
}

struct BlancmangeValue {
  Rational value;       // sum of s_1..s_terms
  Rational tail_bound;  // bound on the omitted terms; 0 when nothing is omitted
};

/// Partial sum of the blancmange series with a certified tail bound.
inline BlancmangeValue blancmange(const Rational& x, long terms) {
  if (terms < 1) fail(ErrorKind::InvalidArgument, "blancmange needs at least one term");
  BlancmangeValue b{Rational(0), Rational(0)};
  for (long n = 1; n <= terms; ++n) b.value += triangle_wave(n, x);
  Integer d = denominator_of(x);
  bool dyadic = (d & (d - 1)) == 0;
  // For x = p/2^q every s_n with n > q vanishes.
  if (!(dyadic && detail::two_adic_valuation(d) <= terms)) b.tail_bound = Rational(1) / pow2(terms);
  return b;
}

/// The full sum at a rational point. The orbit 2^(n-1) x mod 1 is eventually
/// periodic, so the series splits into a finite prefix and a geometric tail.
inline Rational blancmange_exact(const Rational& x) {
  std::map<Rational, long> seen;  // orbit point -> first step
  std::vector<Rational> orbit;
  Rational y = detail::frac(x);
  while (!seen.count(y)) {
    seen.emplace(y, static_cast<long>(orbit.size()));
    orbit.push_back(y);
    y = detail::frac(2 * y);
  }
  long start = seen[y];
  long period = static_cast<long>(orbit.size()) - start;
  Rational prefix = 0, cycle = 0;
  for (long i = 0; i < start; ++i) prefix += detail::s1(orbit[i]) / pow2(i);
  for (long i = start; i < start + period; ++i) cycle += detail::s1(orbit[i]) / pow2(i);
  // Each pass through the cycle is scaled by 2^-period.
  return prefix + cycle / (Rational(1) - Rational(1) / pow2(period));
}

/// (bl(x0 + 2^-m) - bl(x0)) / 2^-m, both values exact.
inline Rational diff_quotient_probe(const Rational& x0, long m) {
  if (m < 1) fail(ErrorKind::InvalidArgument, "probe exponent m must be at least 1");
  Rational h = Rational(1) / pow2(m);
  return (blancmange_exact(x0 + h) - blancmange_exact(x0)) / h;
}

}  // namespace hyperlab
