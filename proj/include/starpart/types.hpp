#pragma once

#include <cstdint>
#include <limits>

namespace starpart {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;
using PartId = std::int32_t;
using Weight = std::int64_t;

// Sentinel for "no node" (unmatched partner, unassigned label, ...).
inline constexpr NodeId kNone = -1;

enum class Objective { cut, connectivity };

inline const char* objective_name(Objective o) {
  return o == Objective::cut ? "cut" : "km1";
}

}  // namespace starpart
