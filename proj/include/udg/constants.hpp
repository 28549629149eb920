#pragma once

#include <cstdint>

namespace udg {

// Per-cell vertex bound of a minimal backbone.
inline constexpr int kBackboneCellBound = 24;
// Maximum degree of a minimal backbone.
inline constexpr int kBackboneDegreeBound = 599;
// Endpoint-union bound of exact-cycle profiles is kEndpointFactor * ceil(sqrt(k)).
inline constexpr int kEndpointFactor = 5 * 24 * 7;
// Connecting edges added at one introduce step of the exact-cycle DP.
inline constexpr int kMaxConnectors = 120;
// Endpoints of one clique path profile.
inline constexpr int kProfileEndpointBudget = 120;
// Crossing edges per cell pair on a normalized cycle.
inline constexpr int kCrossingsPerCellPair = 5;
// Crossing vertices per cell for a simple cycle packing.
inline constexpr int kPackingCrossBound = 2304;
// Treewidth thresholds (times sqrt k) that select the grid-minor branch.
inline constexpr std::int64_t kLongestCycleWidthFactor = 100LL * 599 * 599 * 599;
inline constexpr std::int64_t kHittingWidthFactor = 200LL * 599 * 599 * 599;

}  // namespace udg
