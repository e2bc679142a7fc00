#pragma once

#include <cstdint>
#include <random>

#include "fconv/grid.hpp"

namespace fconv {

// Seeded generator used by every randomized estimator and harness.
using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);

/**
 * Random test function on the grid: a sum of one to four terms, each a
 * possibly modulated Gaussian packet or an interval indicator, with random
 * complex amplitudes. Supports stay inside [-L/2, L/2].
 */
GridFunction random_probe(const Grid& grid, Rng& rng);

// Like random_probe but real and non-negative.
GridFunction random_nonnegative_probe(const Grid& grid, Rng& rng);

}  // namespace fconv
