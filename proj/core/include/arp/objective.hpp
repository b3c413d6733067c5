#pragma once

#include <compare>
#include <limits>
#include <ostream>

namespace arp {

// Fitness of one solution; smaller is better. Values on the supported
// problems are integers or half-integers, so comparisons are exact.
struct ObjectiveValue {
  double value = std::numeric_limits<double>::infinity();

  constexpr ObjectiveValue() = default;
  constexpr explicit ObjectiveValue(double v) : value(v) {}

  friend constexpr auto operator<=>(ObjectiveValue, ObjectiveValue) = default;
  friend constexpr bool operator==(ObjectiveValue, ObjectiveValue) = default;
};

inline std::ostream& operator<<(std::ostream& os, ObjectiveValue v) { return os << v.value; }

}  // namespace arp
