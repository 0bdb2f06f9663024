#include <gtest/gtest.h>

#include "hyperlab/filters_json.hpp"
#include "hyperlab/hyperreal.hpp"
#include "support.hpp"

using namespace hyperlab;
using testing_support::Gen;
using testing_support::kind_of;

namespace {

// Independent axiom oracles: direct quantification over all subsets/pairs.
bool naive_upward(const std::vector<bool>& in, Subset full) {
  for (Subset s = 0; s <= full; ++s)
    if (in[s])
      for (Subset t = 0; t <= full; ++t)
        if ((s & t) == s && !in[t]) return false;
  return true;
}
bool naive_meets(const std::vector<bool>& in, Subset full) {
  for (Subset s = 0; s <= full; ++s)
    if (in[s])
      for (Subset t = 0; t <= full; ++t)
        if (in[t] && !in[s & t]) return false;
  return true;
}
bool naive_complements(const std::vector<bool>& in, Subset full) {
  for (Subset s = 0; s <= full; ++s)
    if (!in[s] && !in[full & ~s]) return false;
  return true;
}
std::vector<bool> indicator(const SetFamily& fam) {
  std::vector<bool> in(std::size_t{1} << fam.universe(), false);
  for (Subset s : fam.members()) in[s] = true;
  return in;
}

Subset evens(int n) {
  Subset s = 0;
  for (int i = 2; i <= n; i += 2) s |= singleton(i);
  return s;
}

Hyperreal omega() { return Hyperreal::omega(); }

// a_0 + a_1 n + ... as an expression in n, plus the coefficients.
Expr poly_in_n(const std::vector<Rational>& c) {
  Expr e = lit(Rational(0));
  for (std::size_t k = 0; k < c.size(); ++k) e = add(e, mul(lit(c[k]), pow(var("n"), Rational(static_cast<long>(k)))));
  return e;
}
Rational horner(const std::vector<Rational>& c, const Rational& n) {
  Rational v = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * n + *it;
  return v;
}

}  // namespace

TEST(Filters, PrincipalFilterOnEvens) {
  SetFamily fam = SetFamily::principal(12, evens(12));
  FilterReport r = check_filter(fam);
  EXPECT_EQ(r.axiom(0).verdict, Verdict::Pass);
  EXPECT_EQ(r.axiom(1).verdict, Verdict::Skipped);
  EXPECT_EQ(r.axiom(2).verdict, Verdict::Pass);
  EXPECT_EQ(r.axiom(3).verdict, Verdict::Pass);
  EXPECT_TRUE(r.is_filter);
  auto in = indicator(fam);
  EXPECT_TRUE(naive_upward(in, fam.full()));
  EXPECT_TRUE(naive_meets(in, fam.full()));
  EXPECT_FALSE(in[0]);
}

TEST(Filters, EmptySetFailsAxiomZero) {
  FilterReport r = check_filter(SetFamily(5, {0}));
  EXPECT_EQ(r.axiom(0).verdict, Verdict::Fail);
  EXPECT_EQ(r.axiom(0).witness, std::vector<Subset>{0});
  EXPECT_FALSE(r.is_filter);
}

TEST(Filters, MissingSupersetHasWitness) {
  SetFamily full = SetFamily::principal(6, singleton(2) | singleton(3));
  std::vector<Subset> members = full.members();
  Subset dropped = singleton(2) | singleton(3) | singleton(5);
  std::erase(members, dropped);
  FilterReport r = check_filter(SetFamily(6, members));
  const AxiomCheck& up = r.axiom(2);
  ASSERT_EQ(up.verdict, Verdict::Fail);
  ASSERT_EQ(up.witness.size(), 2u);
  EXPECT_EQ(up.witness[0] & up.witness[1], up.witness[0]);
  EXPECT_EQ(up.witness[1], dropped);
}

TEST(Filters, IntersectionFailureWitness) {
  // {1,2}, {2,3} and all their supersets, but not {2}.
  std::vector<Subset> m;
  for (Subset s = 0; s <= full_set(4); ++s)
    if ((s & 0b0011) == 0b0011 || (s & 0b0110) == 0b0110) m.push_back(s);
  FilterReport r = check_filter(SetFamily(4, m));
  EXPECT_EQ(r.axiom(2).verdict, Verdict::Pass);
  const AxiomCheck& meet = r.axiom(3);
  ASSERT_EQ(meet.verdict, Verdict::Fail);
  SetFamily fam(4, m);
  EXPECT_TRUE(fam.contains(meet.witness[0]) && fam.contains(meet.witness[1]));
  EXPECT_FALSE(fam.contains(meet.witness[0] & meet.witness[1]));
}

TEST(Filters, ThresholdForm) {
  SetFamily fam = SetFamily::principal(6, singleton(1));
  EXPECT_EQ(check_filter(fam, 1).axiom(1).verdict, Verdict::Pass);  // only the full set is forced
  EXPECT_EQ(check_filter(fam, 2).axiom(1).verdict, Verdict::Fail);  // {2..6} is forced but absent
  FilterReport literal = check_filter(fam, 7);
  EXPECT_EQ(literal.axiom(1).verdict, Verdict::Fail);
  bool mentions = false;
  for (const auto& n : literal.notes) mentions |= n.find("contradicts (0)") != std::string::npos;
  EXPECT_TRUE(mentions);
  EXPECT_EQ(kind_of([&] { check_filter(fam, -1); }), ErrorKind::InvalidArgument);
}

TEST(Filters, NotesRecordTheRedundancyDiscrepancy) {
  FilterReport r = check_filter(SetFamily::principal(3, singleton(1)));
  bool found = false;
  for (const auto& n : r.notes) found |= n.find("also needs (3)") != std::string::npos;
  EXPECT_TRUE(found);
}

TEST(Ultrafilters, PrincipalAtSeven) {
  SetFamily fam = SetFamily::principal(12, singleton(7));
  UltrafilterReport r = check_ultrafilter(fam);
  EXPECT_TRUE(r.is_ultrafilter);
  ASSERT_TRUE(r.generator.has_value());
  EXPECT_EQ(*r.generator, 7);
  EXPECT_EQ(*r.minimal_member, singleton(7));
  // Exhaustive complementarity: exactly one of S and its complement is in.
  for (Subset s = 0; s <= fam.full(); ++s) EXPECT_NE(fam.contains(s), fam.contains(fam.full() & ~s));
}

TEST(Ultrafilters, EvenCardinalityFailsComplements) {
  std::vector<Subset> m;
  for (Subset s = 0; s <= full_set(12); ++s)
    if (cardinality(s) % 2 == 0) m.push_back(s);
  SetFamily fam(12, m);
  UltrafilterReport r = check_ultrafilter(fam);
  const AxiomCheck& c = r.axiom(4);
  ASSERT_EQ(c.verdict, Verdict::Fail);
  ASSERT_EQ(c.witness.size(), 1u);
  EXPECT_FALSE(fam.contains(c.witness[0]));
  EXPECT_FALSE(fam.contains(fam.full() & ~c.witness[0]));
  EXPECT_FALSE(r.is_ultrafilter);
}

TEST(Ultrafilters, PowerSetFailsAxiomZero) {
  std::vector<Subset> all;
  for (Subset s = 0; s <= full_set(5); ++s) all.push_back(s);
  UltrafilterReport r = check_ultrafilter(SetFamily(5, all));
  EXPECT_EQ(r.axiom(0).verdict, Verdict::Fail);
  EXPECT_FALSE(r.is_ultrafilter);
}

TEST(Ultrafilters, SearchMatchesNaiveBruteForce) {
  // Every family of subsets of {1..n}, as a bitmask over the 2^n subsets.
  for (int n : {3, 4}) {
    const Subset full = full_set(n);
    const std::size_t subsets = std::size_t{1} << n;
    std::set<std::vector<Subset>> naive;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << subsets); ++mask) {
      if (mask & 1U) continue;  // contains the empty set
      std::vector<bool> in(subsets);
      for (std::size_t s = 0; s < subsets; ++s) in[s] = mask >> s & 1U;
      if (!naive_complements(in, full) || !naive_upward(in, full) || !naive_meets(in, full)) continue;
      std::vector<Subset> members;
      for (std::size_t s = 0; s < subsets; ++s)
        if (in[s]) members.push_back(static_cast<Subset>(s));
      naive.insert(members);
    }
    std::set<std::vector<Subset>> searched;
    for (const auto& fam : enumerate_ultrafilters(n)) searched.insert(fam.members());
    EXPECT_EQ(naive, searched) << "n = " << n;
    EXPECT_EQ(naive.size(), static_cast<std::size_t>(n));
  }
}

TEST(Ultrafilters, EveryFiniteUltrafilterIsPrincipal) {
  for (int n = 3; n <= 10; ++n) {
    auto families = enumerate_ultrafilters(n);
    ASSERT_EQ(families.size(), static_cast<std::size_t>(n));
    std::set<int> generators;
    for (const auto& fam : families) {
      UltrafilterReport r = check_ultrafilter(fam);
      ASSERT_TRUE(r.is_ultrafilter);
      ASSERT_TRUE(r.generator.has_value());
      generators.insert(*r.generator);
      EXPECT_EQ(fam.members(), SetFamily::principal(n, singleton(*r.generator)).members());
      auto in = indicator(fam);
      EXPECT_TRUE(naive_complements(in, fam.full()));
    }
    EXPECT_EQ(generators.size(), static_cast<std::size_t>(n));
  }
}

TEST(Ultrafilters, CheckerAgreesWithNaiveOracleOnRandomFamilies) {
  Gen g(401);
  for (int i = 0; i < 300; ++i) {
    int n = static_cast<int>(g.integer(2, 5));
    std::vector<Subset> m;
    if (g.coin()) {
      m = SetFamily::principal(n, static_cast<Subset>(g.integer(0, full_set(n)))).members();
      for (int k = 0; k < 2; ++k)
        if (g.coin() && !m.empty()) m.erase(m.begin() + g.integer(0, static_cast<long>(m.size()) - 1));
    } else {
      for (Subset s = 0; s <= full_set(n); ++s)
        if (g.integer(0, 3) == 0) m.push_back(s);
    }
    SetFamily fam(n, m);
    auto in = indicator(fam);
    UltrafilterReport r = check_ultrafilter(fam);
    EXPECT_EQ(r.axiom(0).verdict == Verdict::Pass, !in[0]);
    EXPECT_EQ(r.axiom(2).verdict == Verdict::Pass, naive_upward(in, fam.full()));
    EXPECT_EQ(r.axiom(3).verdict == Verdict::Pass, naive_meets(in, fam.full()));
    EXPECT_EQ(r.axiom(4).verdict == Verdict::Pass, naive_complements(in, fam.full()));
  }
}

TEST(FilterJson, Ingestion) {
  SetFamily fam = family_from_json_text(R"({"universe": 12, "members": [[2, 4, 6], [6, 4, 2], [1]]})");
  EXPECT_EQ(fam.universe(), 12);
  EXPECT_EQ(fam.members().size(), 2u);
  EXPECT_TRUE(fam.contains(singleton(2) | singleton(4) | singleton(6)));
  EXPECT_EQ(kind_of([] { family_from_json_text("{"); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { family_from_json_text(R"({"universe": 3, "members": [[4]]})"); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { family_from_json_text(R"({"universe": 30, "members": []})"); }), ErrorKind::InvalidArgument);
  nlohmann::json j = to_json(check_ultrafilter(SetFamily::principal(4, singleton(3))));
  EXPECT_EQ(j["is_ultrafilter"], true);
  EXPECT_EQ(j["generator"], 3);
}

TEST(Omega, Laws) {
  Hyperreal w = omega();
  EXPECT_EQ(omega_compare(w + 1, w), Ordering::Greater);
  EXPECT_EQ(omega_compare(w * w, w + Hyperreal(1000000)), Ordering::Greater);
  Hyperreal r(Rational(1, 1000000));
  EXPECT_EQ(omega_compare(Hyperreal(0), Hyperreal(1) / (w * w)), Ordering::Less);
  EXPECT_EQ(omega_compare(Hyperreal(1) / (w * w), Hyperreal(1) / w), Ordering::Less);
  EXPECT_EQ(omega_compare(Hyperreal(1) / w, r), Ordering::Less);
  EXPECT_EQ(omega_compare(w, w), Ordering::Equal);
  EXPECT_EQ(kind_of([&] { return w / Hyperreal(0); }), ErrorKind::DivisionByZero);
}

TEST(Omega, Rendering) {
  Hyperreal w = omega();
  EXPECT_EQ(w.str(), "ω");
  EXPECT_EQ((w + 1).str(), "ω + 1");
  EXPECT_EQ((Hyperreal(1) / (w - 3)).str(), "1/(ω - 3)");
  EXPECT_EQ(((w - 1) / (w * w)).str(), "(ω - 1)/ω^2");
}

TEST(Omega, ComparisonMatchesEventualSampling) {
  Gen g(402);
  int strict = 0;
  for (int i = 0; i < 300; ++i) {
    std::vector<Rational> pa, qa, pb, qb;
    for (long k = 0, d = g.integer(0, 3); k <= d; ++k) pa.push_back(g.rational(6, 4));
    for (long k = 0, d = g.integer(0, 2); k <= d; ++k) qa.push_back(g.nonzero_rational(6, 4));
    for (long k = 0, d = g.integer(0, 3); k <= d; ++k) pb.push_back(g.rational(6, 4));
    for (long k = 0, d = g.integer(0, 2); k <= d; ++k) qb.push_back(g.nonzero_rational(6, 4));
    if (i % 10 == 0) pb = pa, qb = qa;  // some ties
    Expr a = div(poly_in_n(pa), poly_in_n(qa)), b = div(poly_in_n(pb), poly_in_n(qb));
    Ordering exact = omega_compare(hyperreal_of(a), hyperreal_of(b));
    int less = 0, equal = 0, greater = 0;
    for (long n = 1000; n <= 1500; ++n) {
      Rational x(n);
      Rational d = horner(pa, x) / horner(qa, x) - horner(pb, x) / horner(qb, x);
      (d < 0 ? less : d == 0 ? equal : greater)++;
    }
    Ordering majority = less > equal && less > greater ? Ordering::Less
                        : greater > equal && greater > less ? Ordering::Greater
                                                            : Ordering::Equal;
    EXPECT_EQ(exact, majority) << render(a) << " vs " << render(b);
    // Past every real root the sign is constant, so the vote is unanimous.
    EXPECT_EQ(std::max({less, equal, greater}), 501);
    strict += exact != Ordering::Equal;
  }
  EXPECT_GT(strict, 200);
}

TEST(Sequences, ThreeWayExample) {
  SequenceSpec s = parse_sequence("1 mod 3: -n | 2 mod 3: n | 0 mod 3: 1/n");
  EXPECT_EQ(sequence_term(s, 1), Rational(-1));
  EXPECT_EQ(sequence_term(s, 2), Rational(2));
  EXPECT_EQ(sequence_term(s, 3), Rational(1, 3));
  EXPECT_EQ(sequence_term(s, 4), Rational(-4));
  EXPECT_EQ(sequence_term(s, 6), Rational(1, 6));

  ClassificationReport r = classify_sequence(s, 100);
  EXPECT_FALSE(r.heuristic);
  EXPECT_EQ(r.cases, (std::set<SequenceCase>{SequenceCase::TendsToMinusInfinity, SequenceCase::TendsToPlusInfinity,
                                             SequenceCase::Bounded}));
  ASSERT_EQ(r.findings.size(), 3u);
  std::map<SequenceCase, const CaseFinding*> by;
  for (const auto& f : r.findings) by[f.which] = &f;
  EXPECT_EQ(by[SequenceCase::TendsToMinusInfinity]->decision_set->str(), "{1, 4, 7, ...}");
  EXPECT_EQ(by[SequenceCase::TendsToPlusInfinity]->decision_set->str(), "{2, 5, 8, ...}");
  EXPECT_EQ(by[SequenceCase::Bounded]->decision_set->str(), "{3, 6, 9, ...}");
  EXPECT_EQ(*by[SequenceCase::TendsToMinusInfinity]->value, -omega());
  EXPECT_EQ(*by[SequenceCase::TendsToPlusInfinity]->value, omega());
  const CaseFinding& iii = *by[SequenceCase::Bounded];
  EXPECT_EQ(*iii.value, Hyperreal(1) / omega());
  EXPECT_EQ(*iii.limit, Rational(0));
  EXPECT_EQ(*iii.infinitesimal_sign, Sign::Positive);
  EXPECT_TRUE(r.choice_dependent);
  EXPECT_EQ(kind_of([&] { to_hyperreal(s); }), ErrorKind::NotRepresentable);
}

TEST(Sequences, SingleCaseExamples) {
  ClassificationReport k = classify_sequence(parse_sequence("7/2"));
  ASSERT_EQ(k.findings.size(), 1u);
  EXPECT_EQ(k.findings[0].which, SequenceCase::Bounded);
  EXPECT_EQ(*k.findings[0].limit, Rational(7, 2));
  EXPECT_EQ(*k.findings[0].infinitesimal_sign, Sign::Zero);
  EXPECT_FALSE(k.choice_dependent);

  SequenceSpec sq = parse_sequence("n^2");
  ClassificationReport r = classify_sequence(sq);
  ASSERT_EQ(r.findings.size(), 1u);
  EXPECT_EQ(r.findings[0].which, SequenceCase::TendsToPlusInfinity);
  EXPECT_EQ(*r.findings[0].value, omega() * omega());
  // Sampling cross-check: the terms exceed every bound reached earlier.
  Rational prev = 0;
  for (long n = 1; n <= 10000; ++n) {
    Rational a = sequence_term(sq, n);
    ASSERT_EQ(a, Rational(n) * Rational(n));
    ASSERT_GT(a, prev);
    prev = a;
  }
}

TEST(Sequences, DecisionSetsPartitionTheIndices) {
  Gen g(403);
  for (int i = 0; i < 40; ++i) {
    long m = g.integer(1, 6);
    std::string src;
    for (long r = 0; r < m; ++r) {
      if (r) src += " | ";
      src += std::to_string(r) + " mod " + std::to_string(m) + ": " +
             (g.coin() ? "-n" : g.coin() ? std::to_string(g.integer(0, 9)) + "*n^2" : "1/n + " + std::to_string(g.integer(0, 5)));
    }
    ClassificationReport rep = classify_sequence(parse_sequence(src));
    EXPECT_FALSE(rep.cases.empty());
    for (long n = 1; n <= 600; ++n) {
      int hits = 0;
      for (const auto& f : rep.findings) hits += f.decision_set->contains(n);
      EXPECT_EQ(hits, 1) << src << " n=" << n;
    }
  }
}

TEST(Sequences, FinitelyManyChangesDoNotMatter) {
  Gen g(404);
  for (int i = 0; i < 50; ++i) {
    std::string base = std::to_string(g.integer(-5, 5)) + "*n^" + std::to_string(g.integer(0, 3)) + " + 1/(n + " +
                       std::to_string(g.integer(1, 9)) + ")";
    std::string edits = "; " + std::to_string(g.integer(1, 20)) + "=" + std::to_string(g.integer(-99, 99)) + ", " +
                        std::to_string(g.integer(21, 40)) + "=7/3";
    SequenceSpec plain = parse_sequence(base), perturbed = parse_sequence(base + edits);
    EXPECT_NE(plain.overrides, perturbed.overrides);
    EXPECT_EQ(to_hyperreal(plain), to_hyperreal(perturbed));
    ClassificationReport a = classify_sequence(plain), b = classify_sequence(perturbed);
    EXPECT_EQ(a.cases, b.cases);
    EXPECT_EQ(*a.findings[0].value, *b.findings[0].value);
    for (long n = 41; n <= 200; ++n) EXPECT_EQ(sequence_term(plain, n), sequence_term(perturbed, n));
  }
}

TEST(Sequences, Errors) {
  EXPECT_EQ(kind_of([] { parse_sequence("1/(n - 5)"); }), ErrorKind::UndefinedTerm);
  EXPECT_EQ(kind_of([] { parse_sequence("1 mod 2: n | 1 mod 2: -n"); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { parse_sequence("sin(n)"); }), ErrorKind::NotAvailable);
  EXPECT_EQ(kind_of([] { classify_sequence(parse_sequence("n"), 99); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { to_hyperreal(parse_sequence("[1, 2, 3]")); }), ErrorKind::NotRepresentable);
}

TEST(Sequences, SampledHeuristic) {
  std::string src = "[";
  for (long n = 1; n <= 300; ++n) {
    if (n > 1) src += ", ";
    src += n % 3 == 1 ? "-" + std::to_string(n) : n % 3 == 2 ? std::to_string(n) : "1/" + std::to_string(n);
  }
  src += "]";
  ClassificationReport r = classify_sequence(parse_sequence(src), 300);
  EXPECT_TRUE(r.heuristic);
  EXPECT_EQ(r.cases.size(), 3u);
  EXPECT_TRUE(r.choice_dependent);
  bool noted = false;
  for (const auto& n : r.notes) noted |= n.find("different choices are possible") != std::string::npos;
  EXPECT_TRUE(noted);
  for (const auto& f : r.findings) {
    EXPECT_FALSE(f.decision_set.has_value());
    EXPECT_FALSE(f.infinitesimal_sign.has_value());
  }

  ClassificationReport flat = classify_sequence(parse_sequence("[5, 5, 5, 5]"), 100);
  EXPECT_EQ(flat.cases, std::set<SequenceCase>{SequenceCase::Bounded});
  EXPECT_FALSE(flat.choice_dependent);
}

TEST(StarExtend, Examples) {
  Hyperreal w = omega();
  EXPECT_EQ(std::get<Hyperreal>(star_extend(parse("1/x"), w)), Hyperreal(1) / w);
  EXPECT_EQ(std::get<Hyperreal>(star_extend(parse("x^2"), w)), w * w);
  Hyperreal next = std::get<Hyperreal>(star_extend(parse("x + 1"), w));
  EXPECT_EQ(next, w + 1);
  for (long n = 1; n <= 1000; ++n) {
    EXPECT_EQ(next.term(n), Rational(n + 1));
    EXPECT_GT(next.term(n), w.term(n));
  }
  EXPECT_EQ(kind_of([&] { star_extend(parse("exp(x)"), w); }), ErrorKind::NotRepresentable);
  ExactSeries e = std::get<ExactSeries>(star_extend(parse("exp(x)"), Hyperreal(1) / w));
  EXPECT_EQ(e.coeff(0), Rational(1));
  EXPECT_EQ(e.coeff(3), Rational(1, 6));
  ApproxSeries s = std::get<ApproxSeries>(star_extend(parse("sin(x)"), Hyperreal(1) + Hyperreal(1) / w));
  EXPECT_TRUE(agree_to_digits(s.coeff(0), sin(Decimal(1L, 50)), 45));
}

TEST(Membership, Examples) {
  Hyperreal w = omega();
  Interval unit = parse_interval("(0, 1)");
  EXPECT_EQ(star_set_membership(unit, Hyperreal(1) / w), Membership::In);
  EXPECT_EQ(star_set_membership(unit, w), Membership::Out);
  Interval half_line = parse_interval("[0, inf)");
  EXPECT_EQ(star_set_membership(half_line, Hyperreal(1) / w - Hyperreal(1) / (w * w)), Membership::In);
  EXPECT_EQ(star_set_membership(parse_interval("[0, 0]"), Hyperreal(0)), Membership::In);
  EXPECT_EQ(star_set_membership(parse_interval("(0, 1]"), Hyperreal(1) + Hyperreal(1) / w), Membership::Out);
  EXPECT_EQ(star_set_membership(unit, parse_sequence("1 mod 2: 1/n | 0 mod 2: n")), Membership::Undecidable);
  EXPECT_EQ(star_set_membership(unit, parse_sequence("1/(n + 1)")), Membership::In);
  EXPECT_EQ(kind_of([] { parse_interval("(1, 0)"); }), ErrorKind::InvalidArgument);
}

TEST(Membership, AgreesWithEventualTerms) {
  Gen g(405);
  for (int i = 0; i < 100; ++i) {
    std::vector<Rational> p{g.rational(3, 3), g.rational(3, 3)}, q{g.nonzero_rational(3, 3), g.rational(3, 3)};
    Expr e = div(poly_in_n(p), poly_in_n(q));
    Interval d{g.rational(3, 2), std::nullopt, g.coin(), false};
    d.hi = *d.lo + Rational(g.integer(0, 4));
    d.hi_closed = g.coin();
    if (*d.hi == *d.lo) d.lo_closed = d.hi_closed = true;
    Membership m = star_set_membership(d, hyperreal_of(e));
    Rational a = horner(p, Rational(100000)) / horner(q, Rational(100000));
    bool inside = (d.lo_closed ? a >= *d.lo : a > *d.lo) && (d.hi_closed ? a <= *d.hi : a < *d.hi);
    EXPECT_EQ(m == Membership::In, inside) << render(e) << " in " << d.str();
  }
}
