#pragma once

#include <cstdint>

#include "fconv/grid.hpp"
#include "fconv/spaces.hpp"

namespace fconv {

enum class MaximalMode { fast, oracle };

/**
 * Non-centered Hardy-Littlewood maximal function on the grid.
 *
 * Intervals are runs of consecutive cells a..b inside the window and the
 * average over a run is the mean of |f| on it, so
 *
 *   (Mf)(t_j) = max_{a <= j <= b} (|f_a| + ... + |f_b|) / (b - a + 1).
 *
 * The oracle enumerates all O(n^2) runs. The fast mode splits runs at a
 * divide-and-conquer midpoint and answers each crossing family by tangent
 * queries against a convex hull of prefix sums, O(n log^2 n) overall.
 */
GridFunction maximal_function(const GridFunction& f, MaximalMode mode = MaximalMode::fast);

/// Lower bound for ||M||_{B(X)}: the largest ||Mf||/||f|| seen on `trials`
/// random probes. Throws Unsupported unless 1 < p < inf.
double maximal_norm_estimate(const SpaceNorm& space, int trials, std::uint64_t seed);
double maximal_norm_estimate(const SpaceNorm& space, int trials, std::uint64_t seed,
                             const Grid& grid);

}  // namespace fconv
