#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fconv/grid.hpp"
#include "fconv/spaces.hpp"
#include "fconv/symbols.hpp"

namespace fconv {

// W0(a) f = F^{-1} (a F f), with a sampled at the frequency nodes.
GridFunction apply_multiplier(const Symbol& a, const GridFunction& f);
// Same with the multiplier already sampled on the frequency nodes.
GridFunction apply_multiplier(const GridFunction& multiplier, const GridFunction& f);

// f * g through the transform pair: F(f * g) = F f . F g, i.e. the circular
// sum dx * sum_j f(t_j) g(t - t_j) on the periodic window.
GridFunction convolve(const GridFunction& f, const GridFunction& g);

enum class MollifierKind { gaussian, bump_spectrum };

/**
 * Unit-integral kernel phi with its dilations phi_delta(x) = phi(x/delta)/delta.
 *
 * gaussian:      phi is the standard normal density; it is radially
 *                decreasing, so its radial majorant is phi itself.
 * bump_spectrum: phi = F^{-1} rho / int F^{-1} rho with rho the smooth bump
 *                on (-1, 1). Its transform vanishes outside [-1, 1]. On the
 *                periodic grid phi_delta is the inverse transform of
 *                rho(delta x)/rho(0), the periodized dilation, so the band
 *                limit [-1/delta, 1/delta] survives sampling exactly.
 */
class Mollifier {
public:
    Mollifier(MollifierKind kind, const Grid& grid);

    MollifierKind kind() const noexcept { return kind_; }
    // phi on the reference grid, quadrature(phi) = 1.
    const GridFunction& kernel() const noexcept { return kernel_; }
    // ||Phi||_{L^1} for the running maximum Phi of |phi| from the edge inward.
    double majorant_l1() const noexcept { return majorant_l1_; }

    // phi_delta sampled on `grid` and renormalized to unit quadrature.
    GridFunction scaled_kernel(double delta, const Grid& grid) const;

private:
    MollifierKind kind_;
    GridFunction kernel_;
    double majorant_l1_;
};

Mollifier make_mollifier(MollifierKind kind, const Grid& grid);

// Radial majorant sup_{|y| >= |t_j|} |f(y)| on the nodes.
GridFunction radial_majorant(const GridFunction& f);

struct SweepRow {
    double delta = 0.0;
    double error = 0.0;  // ||f * phi_delta - f||
    double bound = 0.0;  // ||f * phi_delta||
    bool pointwise_ok = false;
    // max_j (|f * phi_delta| - majorant_l1 * Mf)(t_j); <= 1e-8 when ok.
    double pointwise_excess = 0.0;
};

/**
 * Mollification sweep over decreasing deltas. Each row checks the pointwise
 * bound |f * phi_delta| <= ||Phi||_1 Mf + 1e-8 at every node.
 *
 * Preconditions (PreconditionError): deltas strictly decreasing and each at
 * least half a spatial step; for bump_spectrum the band [-1/delta, 1/delta]
 * must lie inside the frequency window.
 */
std::vector<SweepRow> mollify_sweep(const GridFunction& f, const Mollifier& phi,
                                    const std::vector<double>& deltas, const SpaceNorm& space);

// CSV "delta,error,bound,pointwise_ok", one line per row after the header.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/**
 * Lower bound for ||W0(a)||_{B(X)} from random probes. On unweighted L^2 it
 * also runs power iteration on the diagonal frequency representation and
 * probes the dominant frequency, so the result is max_k |a(x_k)| to rounding.
 */
double multiplier_norm_lower_bound(const Symbol& a, const SpaceNorm& space, int trials,
                                   std::uint64_t seed, const Grid& grid);

struct StechkinReport {
    double lower = 0.0;
    double v_norm = 0.0;
    double ratio = 0.0;
    // true on L^2, where the constant is 1; elsewhere the ratio is an
    // uncalibrated empirical value and no violation is ever flagged.
    bool calibrated = false;
    bool violation = false;

    std::string summary() const;
};

StechkinReport stechkin_check(const Symbol& a, const SpaceNorm& space, int trials,
                              std::uint64_t seed, const Grid& grid);

struct SchwartzReport {
    double rho0 = 0.0;  // sup |f|
    double rho1 = 0.0;  // sup |x f(x)|
    double norm_f = 0.0;
    double norm_chi = 0.0;       // ||chi_[-1,1]||
    double norm_max_chi = 0.0;   // ||M chi_[-1,1]||
    double rhs = 0.0;            // rho0 ||chi|| + rho1 ||M chi||
    bool holds = false;
};

/// Checks ||f|| <= rho0(f) ||chi_[-1,1]|| + rho1(f) ||M chi_[-1,1]|| + 1e-8.
/// Throws Inconclusive when x f(x) has not decayed at the window edge.
SchwartzReport schwartz_embedding_check(const FunctionExpr& f, const SpaceNorm& space,
                                        const Grid& grid);

}  // namespace fconv
