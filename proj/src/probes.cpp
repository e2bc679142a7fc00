#include "fconv/probes.hpp"

#include <cmath>

namespace fconv {

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

namespace {

GridFunction probe(const Grid& grid, Rng& rng, bool complex_valued) {
    const double L = grid.half_width();
    const double dx = grid.spatial_step();
    const int terms = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<cplx> values(grid.size());
    for (int term = 0; term < terms; ++term) {
        cplx amp = uniform(rng, 0.2, 2.0);
        if (complex_valued) amp = std::polar(amp.real(), uniform(rng, -3.14159, 3.14159));
        if (uniform(rng, 0.0, 1.0) < 0.5) {
            const double width = std::max(2.0 * dx, uniform(rng, 0.02, 0.15) * L);
            const double center = uniform(rng, -0.5 * L + 6.0 * width, 0.5 * L - 6.0 * width);
            const double freq =
                complex_valued ? uniform(rng, -0.25, 0.25) * grid.frequency_limit() : 0.0;
            for (std::size_t j = 0; j < values.size(); ++j) {
                const double u = (grid.spatial_node(j) - center) / width;
                values[j] += amp * std::exp(-0.5 * u * u) *
                             std::polar(1.0, freq * grid.spatial_node(j));
            }
        } else {
            const double a = uniform(rng, -0.45 * L, 0.4 * L);
            const double b = a + uniform(rng, 4.0 * dx, 0.45 * L - a);
            for (std::size_t j = 0; j < values.size(); ++j) {
                const double t = grid.spatial_node(j);
                if (t >= a && t < b) values[j] += amp;
            }
        }
    }
    return GridFunction(grid, std::move(values));
}

}  // namespace

GridFunction random_probe(const Grid& grid, Rng& rng) { return probe(grid, rng, true); }

GridFunction random_nonnegative_probe(const Grid& grid, Rng& rng) {
    return probe(grid, rng, false);
}

}  // namespace fconv
