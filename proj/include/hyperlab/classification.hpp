#pragma once

#include <compare>
#include <string_view>

namespace hyperlab {

/// Position of an element of a non-Archimedean field relative to the reals.
enum class Classification {
  Zero,
  PositiveInfinitesimal,
  NegativeInfinitesimal,
  FiniteNonInfinitesimal,
  PositiveInfinite,
  NegativeInfinite,
};

constexpr std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Zero: return "Zero";
    case Classification::PositiveInfinitesimal: return "PositiveInfinitesimal";
    case Classification::NegativeInfinitesimal: return "NegativeInfinitesimal";
    case Classification::FiniteNonInfinitesimal: return "FiniteNonInfinitesimal";
    case Classification::PositiveInfinite: return "PositiveInfinite";
    case Classification::NegativeInfinite: return "NegativeInfinite";
  }
  return "?";
}

constexpr bool is_finite(Classification c) {
  return c != Classification::PositiveInfinite && c != Classification::NegativeInfinite;
}

/// Classification from the order of vanishing at the infinitesimal and the
/// sign of the lowest term.
constexpr Classification classify_by_order(long order, int lowest_sign) {
  if (lowest_sign == 0) return Classification::Zero;
  if (order > 0)
    return lowest_sign > 0 ? Classification::PositiveInfinitesimal : Classification::NegativeInfinitesimal;
  if (order < 0)
    return lowest_sign > 0 ? Classification::PositiveInfinite : Classification::NegativeInfinite;
  return Classification::FiniteNonInfinitesimal;
}

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

constexpr Sign to_sign(int s) { return s < 0 ? Sign::Negative : (s > 0 ? Sign::Positive : Sign::Zero); }

constexpr std::string_view to_string(Sign s) {
  switch (s) {
    case Sign::Negative: return "Negative";
    case Sign::Zero: return "Zero";
    case Sign::Positive: return "Positive";
  }
  return "?";
}

enum class Ordering { Less, Equal, Greater };

constexpr Ordering to_ordering(std::strong_ordering o) {
  return o < 0 ? Ordering::Less : (o > 0 ? Ordering::Greater : Ordering::Equal);
}

constexpr std::string_view to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Equal: return "Equal";
    case Ordering::Greater: return "Greater";
  }
  return "?";
}

}  // namespace hyperlab
