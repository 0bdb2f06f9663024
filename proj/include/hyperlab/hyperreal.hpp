#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hyperlab/evaluate.hpp"
#include "hyperlab/ratfunc.hpp"

namespace hyperlab {

/// Hyperreal represented by a sequence that is a rational function of n.
/// Stored as an element of Q(x) under omega = 1/x, so the order of the
/// field agrees with "a_n < b_n for all but finitely many n".
class Hyperreal {
 public:
  Hyperreal() = default;
  Hyperreal(const Rational& r) : value_(r) {}
  Hyperreal(long r) : value_(Rational(r)) {}
  explicit Hyperreal(RatFunc infinitesimal_form) : value_(std::move(infinitesimal_form)) {}

  static Hyperreal omega() { return Hyperreal(RatFunc(1) / RatFunc::x()); }

  /// The field element in terms of the infinitesimal x = 1/omega.
  const RatFunc& infinitesimal_form() const noexcept { return value_; }

  Classification classify() const { return value_.classify(); }
  Rational standard_part() const { return value_.standard_part(); }
  bool is_zero() const { return value_.is_zero(); }

  friend Hyperreal operator+(const Hyperreal& a, const Hyperreal& b) { return Hyperreal(a.value_ + b.value_); }
  friend Hyperreal operator-(const Hyperreal& a, const Hyperreal& b) { return Hyperreal(a.value_ - b.value_); }
  friend Hyperreal operator-(const Hyperreal& a) { return Hyperreal(-a.value_); }
  friend Hyperreal operator*(const Hyperreal& a, const Hyperreal& b) { return Hyperreal(a.value_ * b.value_); }
  friend Hyperreal operator/(const Hyperreal& a, const Hyperreal& b) { return Hyperreal(a.value_ / b.value_); }
  Hyperreal pow(long e) const { return Hyperreal(value_.pow(e)); }

  friend bool operator==(const Hyperreal& a, const Hyperreal& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Hyperreal& a, const Hyperreal& b) { return a.value_ <=> b.value_; }

  /// Written as a rational function of omega, e.g. "(w^2 + 1)/w".
  std::string str(const std::string& omega_name = "ω") const {
    long d = std::max(value_.num().degree(), value_.den().degree());
    RatFunc in_omega(value_.num().reversed(d), value_.den().reversed(d));
    Rational scale = Rational(1) / in_omega.den().leading();
    Polynomial num = scale * in_omega.num(), den = scale * in_omega.den();
    std::string n = num.str(omega_name);
    if (den.degree() == 0) return n;
    auto wrap = [](const Polynomial& p, const std::string& text) {
      bool bare = p.degree() <= 0 || (p.coefficients().size() == static_cast<std::size_t>(p.degree() + 1) &&
                                      text.find_first_of(" *-") == std::string::npos);
      return bare ? text : "(" + text + ")";
    };
    return wrap(num, n) + "/" + wrap(den, den.str(omega_name));
  }

  /// The term a_n of the canonical representative.
  Rational term(long n) const { return value_.eval_at(Rational(1) / Rational(n)); }

 private:
  RatFunc value_;
};

inline Ordering omega_compare(const Hyperreal& a, const Hyperreal& b) { return to_ordering(a <=> b); }

/// Sequence n -> e(n) read as a hyperreal: n becomes omega.
inline Hyperreal hyperreal_of(const Expr& e, const std::string& index = "n") {
  Bindings<RatFunc> env{{index, RatFunc(1) / RatFunc::x()}};
  return Hyperreal(evaluate(e, RatFuncBackend{}, env));
}

/// Indices n >= 1 with n = residue (mod modulus); residue in [0, modulus).
struct Progression {
  long residue = 0;
  long modulus = 1;

  bool contains(long n) const { return ((n % modulus) + modulus) % modulus == residue; }
  long first() const { return residue == 0 ? modulus : residue; }

  std::string str() const {
    long a = first();
    return "{" + std::to_string(a) + ", " + std::to_string(a + modulus) + ", " + std::to_string(a + 2 * modulus) +
           ", ...}";
  }
  friend bool operator==(const Progression&, const Progression&) = default;
};

struct Branch {
  Progression where;
  Expr term;
};

/// A sequence (a_n), n >= 1: one rational function of n, rational functions
/// on residue classes, or a finite list of samples. Overrides replace
/// finitely many terms.
struct SequenceSpec {
  enum class Kind { RationalFunctionOfN, Interleaved, Sampled };

  Kind kind = Kind::RationalFunctionOfN;
  std::vector<Branch> branches;  // one branch with modulus 1 for RationalFunctionOfN
  std::vector<Rational> samples;
  std::map<long, Rational> overrides;
  std::string index = "n";

  static SequenceSpec formula(Expr e) {
    SequenceSpec s;
    s.branches.push_back({Progression{0, 1}, std::move(e)});
    return s;
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto p = s.find(sep, start);
    out.push_back(trim(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start)));
    if (p == std::string_view::npos) return out;
    start = p + 1;
  }
}

inline long parse_long(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorKind::InvalidArgument, "expected an integer for " + what + ", found '" + s + "'");
}

inline long lcm_capped(long a, long b) {
  long l = std::lcm(a, b);
  if (l > 1'000'000) fail(ErrorKind::InvalidArgument, "common modulus of the branches is too large");
  return l;
}

/// Largest n >= 1 at which some divisor inside `e` could vanish.
inline Rational pole_search_bound(const Expr& e, const std::string& index) {
  Rational bound = 0;
  auto divisor_bound = [&](const Expr& d) {
    RatFunc r = evaluate(d, RatFuncBackend{}, Bindings<RatFunc>{{index, RatFunc::x()}});
    if (r.num().degree() > 0) bound = std::max(bound, r.num().root_bound());
  };
  auto walk = [&](auto&& self, const Expr& x) -> void {
    if (auto n = x.as<Negate>()) self(self, n->operand);
    if (auto c = x.as<Call>()) self(self, c->arg);
    if (auto b = x.as<Binary>()) {
      self(self, b->lhs);
      if (b->op == BinaryOp::Pow) {
        if (exponent_of(*b) < 0) divisor_bound(b->lhs);
      } else {
        self(self, b->rhs);
        if (b->op == BinaryOp::Div) divisor_bound(b->rhs);
      }
    }
  };
  walk(walk, e);
  return bound;
}

}  // namespace detail

/// Exact term a_n (n >= 1).
inline Rational sequence_term(const SequenceSpec& s, long n) {
  if (n < 1) fail(ErrorKind::IndexOutOfRange, "sequence indices start at 1");
  if (auto it = s.overrides.find(n); it != s.overrides.end()) return it->second;
  if (s.kind == SequenceSpec::Kind::Sampled) {
    if (static_cast<std::size_t>(n) > s.samples.size())
      fail(ErrorKind::IndexOutOfRange, "only " + std::to_string(s.samples.size()) + " samples are given");
    return s.samples[n - 1];
  }
  for (const auto& b : s.branches)
    if (b.where.contains(n)) {
      try {
        return evaluate(b.term, RealExactBackend{}, Bindings<Rational>{{s.index, Rational(n)}});
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::DivisionByZero)
          fail(ErrorKind::UndefinedTerm, "a_" + std::to_string(n) + " is undefined: " + render(b.term) +
                                             " has a vanishing denominator at n = " + std::to_string(n));
        throw;
      }
    }
  fail(ErrorKind::InvalidArgument, "no branch covers n = " + std::to_string(n));
}

/// Checks the residue partition and that every term is defined.
inline void validate(const SequenceSpec& s) {
  if (s.kind == SequenceSpec::Kind::Sampled) {
    if (s.samples.empty()) fail(ErrorKind::InvalidArgument, "a sampled sequence needs at least one term");
    return;
  }
  if (s.branches.empty()) fail(ErrorKind::InvalidArgument, "sequence has no branches");
  long common = 1;
  for (const auto& b : s.branches) {
    if (b.where.modulus < 1) fail(ErrorKind::InvalidArgument, "modulus must be positive");
    common = detail::lcm_capped(common, b.where.modulus);
  }
  for (long r = 0; r < common; ++r) {
    int hits = 0;
    for (const auto& b : s.branches) hits += b.where.contains(r) ? 1 : 0;
    if (hits != 1)
      fail(ErrorKind::InvalidArgument, "residue " + std::to_string(r) + " mod " + std::to_string(common) + " is covered " +
                                           std::to_string(hits) + " times; branches must partition the indices");
  }
  for (const auto& b : s.branches) {
    hyperreal_of(b.term, s.index);  // rejects non-rational terms
    Rational bound = detail::pole_search_bound(b.term, s.index);
    long top = static_cast<long>(floor_of(bound));
    for (long n = b.where.first(); n <= top; n += b.where.modulus) sequence_term(s, n);
  }
}

/// Parses "n^2 + 1", "1 mod 3: -n | 2 mod 3: n | 0 mod 3: 1/n" or
/// "[-1, 2, 1/3]", each optionally followed by "; 3=7, 5=0" overrides.
inline SequenceSpec parse_sequence(std::string_view src) {
  SequenceSpec s;
  std::string body = detail::trim(src);
  if (auto semi = body.find(';'); semi != std::string::npos) {
    for (const auto& item : detail::split(std::string_view(body).substr(semi + 1), ',')) {
      if (item.empty()) continue;
      auto eq = item.find('=');
      if (eq == std::string::npos) fail(ErrorKind::InvalidArgument, "override '" + item + "' must look like n=value");
      long n = detail::parse_long(detail::trim(item.substr(0, eq)), "an override index");
      if (n < 1) fail(ErrorKind::IndexOutOfRange, "override index must be at least 1");
      s.overrides[n] = parse_rational(detail::trim(item.substr(eq + 1)));
    }
    body = detail::trim(body.substr(0, semi));
  }
  if (body.empty()) fail(ErrorKind::InvalidArgument, "empty sequence");
  if (body.front() == '[') {
    if (body.back() != ']') fail(ErrorKind::InvalidArgument, "sampled sequence must end with ']'");
    s.kind = SequenceSpec::Kind::Sampled;
    for (const auto& item : detail::split(std::string_view(body).substr(1, body.size() - 2), ','))
      if (!item.empty()) s.samples.push_back(parse_rational(item));
  } else if (body.find(':') != std::string::npos) {
    s.kind = SequenceSpec::Kind::Interleaved;
    for (const auto& piece : detail::split(body, '|')) {
      auto colon = piece.find(':');
      if (colon == std::string::npos) fail(ErrorKind::InvalidArgument, "branch '" + piece + "' must look like 'r mod m: term'");
      std::string head = detail::trim(piece.substr(0, colon));
      auto mod = head.find("mod");
      if (mod == std::string::npos) fail(ErrorKind::InvalidArgument, "branch '" + piece + "' must look like 'r mod m: term'");
      long r = detail::parse_long(detail::trim(head.substr(0, mod)), "a residue");
      long m = detail::parse_long(detail::trim(head.substr(mod + 3)), "a modulus");
      if (m < 1) fail(ErrorKind::InvalidArgument, "modulus must be positive");
      s.branches.push_back({Progression{((r % m) + m) % m, m}, parse(piece.substr(colon + 1))});
    }
  } else {
    s.branches.push_back({Progression{0, 1}, parse(body)});
  }
  validate(s);
  return s;
}

/// The hyperreal of a definable sequence. Overrides are ignored, since
/// finitely many terms never matter. Branches with different values make
/// the class depend on the ultrafilter, which is refused.
inline Hyperreal to_hyperreal(const SequenceSpec& s) {
  if (s.kind == SequenceSpec::Kind::Sampled)
    fail(ErrorKind::NotRepresentable, "a finite list of samples does not determine a hyperreal");
  Hyperreal first = hyperreal_of(s.branches.front().term, s.index);
  for (const auto& b : s.branches)
    if (hyperreal_of(b.term, s.index) != first)
      fail(ErrorKind::NotRepresentable,
           "branches disagree, so the class depends on which decision set the ultrafilter contains");
  return first;
}

enum class SequenceCase { TendsToMinusInfinity, TendsToPlusInfinity, Bounded };

constexpr std::string_view to_string(SequenceCase c) {
  switch (c) {
    case SequenceCase::TendsToMinusInfinity: return "(i)";
    case SequenceCase::TendsToPlusInfinity: return "(ii)";
    case SequenceCase::Bounded: return "(iii)";
  }
  return "?";
}

struct CaseFinding {
  SequenceCase which;
  std::optional<Progression> decision_set;  // absent for heuristic findings
  std::optional<Hyperreal> value;            // exact class on the decision set
  std::optional<Rational> limit;             // L for case (iii)
  std::optional<Sign> infinitesimal_sign;    // sign of value - L; absent when undetermined
  std::size_t support = 0;                   // heuristic: number of sampled terms in this case
};

struct ClassificationReport {
  std::vector<CaseFinding> findings;
  std::set<SequenceCase> cases;
  bool heuristic = false;
  bool choice_dependent = false;
  std::vector<std::string> notes;
};

namespace detail {

inline CaseFinding finding_for(const Hyperreal& h) {
  CaseFinding f{SequenceCase::Bounded, std::nullopt, h, std::nullopt, std::nullopt, 0};
  switch (h.classify()) {
    case Classification::NegativeInfinite: f.which = SequenceCase::TendsToMinusInfinity; break;
    case Classification::PositiveInfinite: f.which = SequenceCase::TendsToPlusInfinity; break;
    default: {
      auto [c, rest] = decompose_finite(h.infinitesimal_form());
      f.limit = c;
      f.infinitesimal_sign = rest.low_order_sign();
    }
  }
  return f;
}

inline ClassificationReport classify_sampled(const SequenceSpec& s, long horizon) {
  ClassificationReport r;
  r.heuristic = true;
  long m = std::min<long>(horizon, static_cast<long>(s.samples.size()));
  long quarter = std::max<long>(1, m / 4);
  Rational radius = 0;
  for (long n = 1; n <= quarter; ++n) radius = std::max(radius, abs(sequence_term(s, n)));
  radius = 2 * radius + 1;

  std::size_t below = 0, above = 0, bounded = 0;
  std::optional<Rational> last_bounded;
  for (long n = m / 2 + 1; n <= m; ++n) {
    Rational a = sequence_term(s, n);
    if (a < -radius) ++below;
    else if (a > radius) ++above;
    else {
      ++bounded;
      last_bounded = a;
    }
  }
  if (below) r.findings.push_back({SequenceCase::TendsToMinusInfinity, std::nullopt, std::nullopt, std::nullopt, std::nullopt, below});
  if (above) r.findings.push_back({SequenceCase::TendsToPlusInfinity, std::nullopt, std::nullopt, std::nullopt, std::nullopt, above});
  if (bounded) r.findings.push_back({SequenceCase::Bounded, std::nullopt, std::nullopt, last_bounded, std::nullopt, bounded});
  r.notes.push_back("heuristic: based on terms " + std::to_string(m / 2 + 1) + ".." + std::to_string(m) +
                    " against the radius " + to_string(radius) + "; the infinitesimal part of case (iii) is undetermined");
  return r;
}

}  // namespace detail

/// Trichotomy of a sequence: on each decision set it tends to -infinity
/// (i), to +infinity (ii), or stays bounded and sits at L plus an
/// infinitesimal (iii).
inline ClassificationReport classify_sequence(const SequenceSpec& s, long horizon = 100) {
  if (horizon < 100) fail(ErrorKind::InvalidArgument, "horizon must be at least 100");
  validate(s);
  ClassificationReport r;
  if (s.kind == SequenceSpec::Kind::Sampled) {
    r = detail::classify_sampled(s, horizon);
  } else {
    for (const auto& b : s.branches) {
      CaseFinding f = detail::finding_for(hyperreal_of(b.term, s.index));
      f.decision_set = b.where;
      r.findings.push_back(std::move(f));
    }
  }
  for (const auto& f : r.findings) r.cases.insert(f.which);
  r.choice_dependent = r.cases.size() > 1;
  if (r.choice_dependent)
    r.notes.push_back("different choices are possible: which case the class falls into depends on the ultrafilter");
  return r;
}

/// f applied to h termwise. Rational f stays exact in Q(omega); any other
/// analytic f is expanded as a series around the standard part of h.
using StarValue = std::variant<Hyperreal, ExactSeries, ApproxSeries>;

inline StarValue star_extend(const Expr& f, const Hyperreal& h, const std::string& name = "x", int terms = 16,
                             unsigned digits = 50) {
  try {
    return Hyperreal(evaluate(f, RatFuncBackend{}, Bindings<RatFunc>{{name, h.infinitesimal_form()}}));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotAvailable) throw;
  }
  if (h.infinitesimal_form().order() < 0)
    fail(ErrorKind::NotRepresentable, "a transcendental function of an infinite hyperreal has no finite description here");
  ExactSeries s = embed_ratfunc(h.infinitesimal_form(), terms);
  try {
    return evaluate(f, ExactSeriesBackend{terms, digits}, Bindings<ExactSeries>{{name, s}});
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ModeError) throw;
  }
  ApproxSeriesBackend approx{terms, digits};
  return evaluate(f, approx, Bindings<ApproxSeries>{{name, to_approx(s, digits)}});
}

/// Interval with rational endpoints; an absent endpoint is infinite.
struct Interval {
  std::optional<Rational> lo, hi;
  bool lo_closed = false, hi_closed = false;

  bool contains(const Hyperreal& h) const {
    if (lo && (lo_closed ? h < Hyperreal(*lo) : h <= Hyperreal(*lo))) return false;
    if (hi && (hi_closed ? h > Hyperreal(*hi) : h >= Hyperreal(*hi))) return false;
    return true;
  }

  std::string str() const {
    return std::string(lo_closed ? "[" : "(") + (lo ? to_string(*lo) : "-inf") + ", " + (hi ? to_string(*hi) : "inf") +
           (hi_closed ? "]" : ")");
  }
};

/// "(0, 1)", "[0, inf)", "(-inf, 3]".
inline Interval parse_interval(std::string_view src) {
  std::string s = detail::trim(src);
  if (s.size() < 3 || (s.front() != '(' && s.front() != '[') || (s.back() != ')' && s.back() != ']'))
    fail(ErrorKind::InvalidArgument, "interval must look like (a, b), [a, b), (a, b] or [a, b]");
  auto parts = detail::split(std::string_view(s).substr(1, s.size() - 2), ',');
  if (parts.size() != 2) fail(ErrorKind::InvalidArgument, "interval needs exactly two endpoints");
  Interval iv;
  iv.lo_closed = s.front() == '[';
  iv.hi_closed = s.back() == ']';
  auto endpoint = [](const std::string& p, bool lower) -> std::optional<Rational> {
    if (p == (lower ? "-inf" : "inf") || (!lower && p == "+inf")) return std::nullopt;
    return parse_rational(p);
  };
  iv.lo = endpoint(parts[0], true);
  iv.hi = endpoint(parts[1], false);
  if ((!iv.lo && iv.lo_closed) || (!iv.hi && iv.hi_closed))
    fail(ErrorKind::InvalidArgument, "an infinite endpoint cannot be closed");
  if (iv.lo && iv.hi && *iv.lo > *iv.hi) fail(ErrorKind::InvalidArgument, "interval endpoints are reversed");
  return iv;
}

enum class Membership { In, Out, Undecidable };

constexpr std::string_view to_string(Membership m) {
  return m == Membership::In ? "In" : m == Membership::Out ? "Out" : "Undecidable";
}

inline Membership star_set_membership(const Interval& d, const Hyperreal& h) {
  return d.contains(h) ? Membership::In : Membership::Out;
}

/// Membership of a sequence's class: decided when every branch agrees,
/// otherwise it depends on the ultrafilter.
inline Membership star_set_membership(const Interval& d, const SequenceSpec& s) {
  if (s.kind == SequenceSpec::Kind::Sampled) return Membership::Undecidable;
  std::set<Membership> seen;
  for (const auto& b : s.branches) seen.insert(star_set_membership(d, hyperreal_of(b.term, s.index)));
  return seen.size() == 1 ? *seen.begin() : Membership::Undecidable;
}

}  // namespace hyperlab
