#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperlab/errors.hpp"

namespace hyperlab {

/// Subset of the universe {1..n}; bit i-1 stands for element i.
using Subset = std::uint32_t;

inline constexpr int kMaxUniverse = 20;

inline Subset full_set(int n) { return n >= 32 ? ~Subset{0} : (Subset{1} << n) - 1; }
inline Subset singleton(int element) { return Subset{1} << (element - 1); }
inline int cardinality(Subset s) { return std::popcount(s); }

inline std::string subset_str(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < 32; ++i) {
    if (!(s >> i & 1U)) continue;
    if (!first) out += ", ";
    out += std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

/// A family of "decisive" subsets of a finite universe {1..n}.
class SetFamily {
 public:
  SetFamily(int universe, std::vector<Subset> members) : universe_(universe), members_(std::move(members)) {
    if (universe < 1 || universe > kMaxUniverse)
      fail(ErrorKind::InvalidArgument, "universe size must lie in 1.." + std::to_string(kMaxUniverse));
    for (Subset s : members_)
      if ((s & ~full_set(universe)) != 0)
        fail(ErrorKind::InvalidArgument, "member " + subset_str(s) + " is not inside {1.." + std::to_string(universe) + "}");
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    present_.assign(std::size_t{1} << universe, false);
    for (Subset s : members_) present_[s] = true;
  }

  /// Members given as lists of elements.
  static SetFamily from_lists(int universe, const std::vector<std::vector<int>>& lists) {
    std::vector<Subset> members;
    for (const auto& list : lists) {
      Subset s = 0;
      for (int e : list) {
        if (e < 1 || e > universe)
          fail(ErrorKind::InvalidArgument, "element " + std::to_string(e) + " outside {1.." + std::to_string(universe) + "}");
        s |= singleton(e);
      }
      members.push_back(s);
    }
    return SetFamily(universe, std::move(members));
  }

  /// Every superset of `generator`.
  static SetFamily principal(int universe, Subset generator) {
    std::vector<Subset> members;
    for (Subset s = 0; s <= full_set(universe); ++s)
      if ((s & generator) == generator) members.push_back(s);
    return SetFamily(universe, std::move(members));
  }

  int universe() const noexcept { return universe_; }
  Subset full() const noexcept { return full_set(universe_); }
  const std::vector<Subset>& members() const noexcept { return members_; }
  bool contains(Subset s) const { return present_[s]; }

 private:
  int universe_;
  std::vector<Subset> members_;
  std::vector<bool> present_;
};

enum class Verdict { Pass, Fail, Skipped };

constexpr std::string_view to_string(Verdict v) {
  return v == Verdict::Pass ? "pass" : v == Verdict::Fail ? "fail" : "skipped";
}

struct AxiomCheck {
  int axiom;  // 0..4
  Verdict verdict;
  std::string detail;
  std::vector<Subset> witness;
};

struct FilterReport {
  std::vector<AxiomCheck> axioms;
  std::vector<std::string> notes;
  bool is_filter = false;

  const AxiomCheck& axiom(int id) const {
    for (const auto& a : axioms)
      if (a.axiom == id) return a;
    fail(ErrorKind::InvalidArgument, "axiom " + std::to_string(id) + " not in report");
  }
};

struct UltrafilterReport : FilterReport {
  bool is_ultrafilter = false;
  std::optional<Subset> minimal_member;
  std::optional<int> generator;  // principal ultrafilter generated by {generator}
};

namespace detail {

inline AxiomCheck check_no_empty(const SetFamily& fam) {
  if (fam.contains(0)) return {0, Verdict::Fail, "the empty set (a finite set) is decisive", {0}};
  return {0, Verdict::Pass, "the empty set is not decisive", {}};
}

inline AxiomCheck check_cofinite(const SetFamily& fam, std::optional<int> threshold) {
  if (!threshold)
    return {1, Verdict::Skipped, "no threshold given; the finite-universe form of (1) is disabled", {}};
  for (Subset s = 0; s <= fam.full(); ++s) {
    if (fam.universe() - cardinality(s) < *threshold && !fam.contains(s))
      return {1, Verdict::Fail,
              subset_str(s) + " has a complement with fewer than " + std::to_string(*threshold) +
                  " elements but is not decisive",
              {s}};
  }
  return {1, Verdict::Pass,
          "every set whose complement has fewer than " + std::to_string(*threshold) + " elements is decisive", {}};
}

// Upward closure only needs single-element extensions.
inline AxiomCheck check_upward(const SetFamily& fam) {
  for (Subset s : fam.members())
    for (int i = 0; i < fam.universe(); ++i) {
      Subset t = s | (Subset{1} << i);
      if (t != s && !fam.contains(t))
        return {2, Verdict::Fail, subset_str(s) + " is decisive but its superset " + subset_str(t) + " is not", {s, t}};
    }
  return {2, Verdict::Pass, "closed under supersets", {}};
}

inline AxiomCheck check_intersections(const SetFamily& fam, bool upward_closed) {
  const auto& m = fam.members();
  if (upward_closed && !m.empty()) {
    // An upward-closed family is intersection-closed iff it holds the meet
    // of all members; the running meet is always a member, so a failure
    // yields a witness pair directly.
    Subset meet = m.front();
    for (Subset s : m) {
      if (!fam.contains(meet & s))
        return {3, Verdict::Fail,
                subset_str(meet) + " and " + subset_str(s) + " are decisive but their intersection " +
                    subset_str(meet & s) + " is not",
                {meet, s}};
      meet &= s;
    }
    return {3, Verdict::Pass, "closed under pairwise intersection", {}};
  }
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (!fam.contains(m[i] & m[j]))
        return {3, Verdict::Fail,
                subset_str(m[i]) + " and " + subset_str(m[j]) + " are decisive but their intersection " +
                    subset_str(m[i] & m[j]) + " is not",
                {m[i], m[j]}};
  return {3, Verdict::Pass, "closed under pairwise intersection", {}};
}

inline AxiomCheck check_complements(const SetFamily& fam) {
  for (Subset s = 0; s <= fam.full(); ++s)
    if (!fam.contains(s) && !fam.contains(fam.full() & ~s))
      return {4, Verdict::Fail,
              "neither " + subset_str(s) + " nor its complement " + subset_str(fam.full() & ~s) + " is decisive",
              {s}};
  return {4, Verdict::Pass, "every set or its complement is decisive", {}};
}

inline std::vector<std::string> finite_universe_notes(const SetFamily& fam, std::optional<int> threshold) {
  std::vector<std::string> notes;
  notes.push_back("On a finite universe every set is finite, so (0) is checked as: the empty set is not decisive.");
  notes.push_back(
      "(0) is verified on its own. Deriving it from (1) and (4) also needs (3): a finite S with a decisive "
      "complement would make the empty intersection decisive.");
  if (!threshold) {
    notes.push_back(
        "(1) takes a threshold t: a set whose complement has fewer than t elements must be decisive. Read "
        "literally on a finite universe, (1) makes every subset decisive, which contradicts (0); the two only "
        "coexist on an infinite index set.");
  } else if (*threshold > fam.universe()) {
    notes.push_back("With t = " + std::to_string(*threshold) + " > universe size, (1) demands that every subset, "
                    "the empty set included, is decisive; this is the literal reading and it contradicts (0).");
  }
  return notes;
}

}  // namespace detail

/// Axioms (0)-(3) on a finite universe. (1) is checked only when a
/// threshold is supplied.
inline FilterReport check_filter(const SetFamily& fam, std::optional<int> threshold = std::nullopt) {
  if (threshold && *threshold < 0) fail(ErrorKind::InvalidArgument, "threshold must be non-negative");
  FilterReport r;
  auto upward = detail::check_upward(fam);
  bool closed = upward.verdict == Verdict::Pass;
  r.axioms = {detail::check_no_empty(fam), detail::check_cofinite(fam, threshold), std::move(upward),
              detail::check_intersections(fam, closed)};
  r.notes = detail::finite_universe_notes(fam, threshold);
  r.is_filter = !fam.members().empty() && std::none_of(r.axioms.begin(), r.axioms.end(),
                                                       [](const AxiomCheck& a) { return a.verdict == Verdict::Fail; });
  return r;
}

/// Axioms (0), (2), (3), (4) plus principality: when (2)-(4) hold the
/// family has a least member, and on a finite universe it is a singleton.
inline UltrafilterReport check_ultrafilter(const SetFamily& fam) {
  UltrafilterReport r;
  auto upward = detail::check_upward(fam);
  bool closed = upward.verdict == Verdict::Pass;
  r.axioms = {detail::check_no_empty(fam), std::move(upward), detail::check_intersections(fam, closed),
              detail::check_complements(fam)};
  r.notes = detail::finite_universe_notes(fam, std::nullopt);
  bool closure_ok = r.axioms[1].verdict == Verdict::Pass && r.axioms[2].verdict == Verdict::Pass &&
                    r.axioms[3].verdict == Verdict::Pass;
  r.is_filter = closure_ok && r.axioms[0].verdict == Verdict::Pass;
  r.is_ultrafilter = r.is_filter;
  if (closure_ok && !fam.members().empty()) {
    Subset meet = fam.full();
    for (Subset s : fam.members()) meet &= s;
    r.minimal_member = meet;
    if (cardinality(meet) == 1) {
      r.generator = std::countr_zero(meet) + 1;
      r.notes.push_back("principal: generated by {" + std::to_string(*r.generator) +
                        "}, as every ultrafilter on a finite universe must be");
    }
  }
  return r;
}

/// Every family on {1..n} satisfying (2), (3), (4) without the empty set,
/// found by exhaustive backtracking over complementary pairs. Each branch
/// only fixes memberships that the axioms force, so no solution is pruned.
inline std::vector<SetFamily> enumerate_ultrafilters(int n) {
  if (n < 1 || n > 12) fail(ErrorKind::InvalidArgument, "exhaustive search supports universes of size 1..12");
  enum : std::int8_t { Unknown = 0, In = 1, Out = 2 };
  const Subset full = full_set(n);
  const std::size_t size = std::size_t{1} << n;

  // Subsets ordered by cardinality so singletons are decided first.
  std::vector<Subset> order(size);
  for (Subset s = 0; s < size; ++s) order[s] = s;
  std::stable_sort(order.begin(), order.end(), [](Subset a, Subset b) { return cardinality(a) < cardinality(b); });

  std::vector<SetFamily> found;

  struct State {
    std::vector<std::int8_t> status;
    std::vector<Subset> in;
  };

  // Applies S -> value and everything the axioms force; false on conflict.
  auto assign = [&](State& st, Subset first, std::int8_t value) {
    std::vector<std::pair<Subset, std::int8_t>> queue{{first, value}};
    while (!queue.empty()) {
      auto [s, v] = queue.back();
      queue.pop_back();
      if (st.status[s] == v) continue;
      if (st.status[s] != Unknown) return false;
      if (v == In && s == 0) return false;
      st.status[s] = v;
      if (v == In) {
        queue.push_back({full & ~s, Out});                                      // (3) with no empty set
        for (int i = 0; i < n; ++i) queue.push_back({s | (Subset{1} << i), In});  // (2)
        for (Subset t : st.in) queue.push_back({s & t, In});                    // (3)
        st.in.push_back(s);
      } else {
        queue.push_back({full & ~s, In});  // (4)
        for (int i = 0; i < n; ++i)
          if (s >> i & 1U) queue.push_back({s & ~(Subset{1} << i), Out});  // contrapositive of (2)
      }
    }
    return true;
  };

  auto search = [&](auto&& self, State st) -> void {
    auto next = std::find_if(order.begin(), order.end(), [&](Subset s) { return st.status[s] == Unknown; });
    if (next == order.end()) {
      std::vector<Subset> members;
      for (Subset s = 0; s < size; ++s)
        if (st.status[s] == In) members.push_back(s);
      found.emplace_back(n, std::move(members));
      return;
    }
    for (std::int8_t v : {In, Out}) {
      State branch = st;
      if (assign(branch, *next, v)) self(self, std::move(branch));
    }
  };

  State root{std::vector<std::int8_t>(size, Unknown), {}};
  if (assign(root, 0, Out)) search(search, std::move(root));
  return found;
}

}  // namespace hyperlab
