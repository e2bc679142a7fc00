#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fconv/grid.hpp"

namespace fconv {

/**
 * Power-weighted Lebesgue space L^p(|x|^gamma).
 *
 * Valid parameters: 1 <= p <= inf. For 1 < p < inf the weight must satisfy
 * the Muckenhoupt condition -1 < gamma < p - 1; for p = 1 the A_1 range
 * -1 < gamma <= 0; for p = inf only gamma = 0.
 */
class SpaceNorm {
public:
    static constexpr double infinity = std::numeric_limits<double>::infinity();

    SpaceNorm(double exponent, double weight_exponent = 0.0);

    double exponent() const noexcept { return p_; }
    double weight_exponent() const noexcept { return gamma_; }
    bool is_infinite() const noexcept { return p_ == infinity; }
    // Unweighted L^2, where multiplier norms are sup norms of the symbol.
    bool is_l2() const noexcept { return p_ == 2.0 && gamma_ == 0.0; }

    // Weight at t on the grid. The node t = 0 uses 0 for gamma > 0 and the
    // value one spatial step away for gamma < 0.
    double weight(double t, double spatial_step) const noexcept;

    std::string describe() const;

    bool operator==(const SpaceNorm&) const = default;

private:
    double p_;
    double gamma_;
};

inline SpaceNorm lebesgue(double p) { return SpaceNorm(p, 0.0); }

// (quadrature |f|^p w)^{1/p}, or max |f| over the nodes for p = inf.
double space_norm(const SpaceNorm& space, const GridFunction& f);

// Dual exponent p' = p/(p-1) and weight exponent -gamma/(p-1).
// Throws Unsupported for p = 1 and p = inf.
SpaceNorm associate_space(const SpaceNorm& space);

struct AxiomResult {
    std::string axiom;  // "A1" .. "A5"
    bool pass = false;
    // Smallest relative margin observed; negative means a violation.
    double worst_slack = 0.0;
    // A5 only: largest observed ratio int_E |f| / ||f|| over the trials.
    std::optional<double> empirical_constant;
};

struct AxiomReport {
    SpaceNorm space;
    std::vector<AxiomResult> results;

    bool all_pass() const;
};

// Checks the Banach function norm axioms on pseudo-random probes. The
// default grid is L = 8, n = 256.
AxiomReport verify_axioms(const SpaceNorm& space, int trials, std::uint64_t seed);
AxiomReport verify_axioms(const SpaceNorm& space, int trials, std::uint64_t seed,
                          const Grid& grid);

// JSON array of {axiom, pass, worst_slack} objects.
std::string to_json(const AxiomReport& report);

}  // namespace fconv
