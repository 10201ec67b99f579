#pragma once

#include <cmath>
#include <cstddef>

namespace ghd::detail {

__extension__ using u128 = unsigned __int128;

// ceil() that does not round a value up past an integer it equals in exact
// arithmetic but overshoots by a few ulps in floating point.
inline double tolerant_ceil(double v) {
  const double nearest = std::nearbyint(v);
  if (std::fabs(v - nearest) <= 1e-9 * std::fmax(1.0, std::fabs(v))) return nearest;
  return std::ceil(v);
}

}  // namespace ghd::detail
