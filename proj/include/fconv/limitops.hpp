#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fconv/fourier.hpp"
#include "fconv/grid.hpp"
#include "fconv/spaces.hpp"
#include "fconv/symbols.hpp"

namespace fconv {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const noexcept { return hi - lo; }
    bool contains(double x) const noexcept { return x >= lo && x <= hi; }
};

// e_lambda f with e_lambda(t) = e^{i lambda t}.
GridFunction modulate(const GridFunction& f, double lambda);

// True when h is an integer multiple of the frequency step (relative 1e-9).
bool on_frequency_lattice(const Grid& grid, double h);
// The lattice value m * dxi closest to h.
double nearest_lattice_value(const Grid& grid, double h);

struct ConjugatedResult {
    GridFunction result;       // e_h W0(a) e_h^{-1} f
    double identity_residual;  // ||result - W0(a(. + h)) f||_2
    bool off_lattice;          // h is not a lattice shift; residual not guaranteed
};

ConjugatedResult conjugated_apply(const Symbol& a, double h, const GridFunction& f);

// Fraction of the transform's l1 mass outside K.
double out_of_band_mass(const GridFunction& f, const Interval& band);

// Band-limited function whose transform is the bump stretched onto K.
GridFunction band_limited_bump(const Grid& grid, const Interval& band);

struct LimitSweepConfig {
    Symbol symbol;
    GridFunction f;
    Interval band;  // declared frequency support K of f
    std::vector<double> shifts;
    SpaceNorm space;
};

struct LimitSweepRow {
    double h = 0.0;
    double norm = 0.0;   // ||e_h W0(a) e_h^{-1} f||
    double bound = 0.0;  // 3 c_X ||chi_{R\[-N,N]} a|| ||f||
    bool within_bound = false;
    double tail_level = 0.0;  // N = inf(K) + h
    double tail = 0.0;        // the tail factor: sup on L^2, V-norm elsewhere
    double residual = 0.0;    // conjugation identity residual
};

struct LimitSweepTable {
    std::vector<LimitSweepRow> rows;
    // Bounds use the exact L^2 constant; elsewhere they are reported with
    // c_X = 1 and not asserted.
    bool calibrated = false;

    bool all_within() const;
};

/**
 * Norms of the conjugated operator along the shift sequence, each row
 * against the upper-bound chain built from the tail of a beyond
 * N = inf(K) + h and the factor ||chi_{K+h}||_V = 3. Throws PreconditionError
 * when the configuration is invalid (off-lattice or non-increasing shifts,
 * K + h leaving the window, f not supported in K).
 */
LimitSweepTable limit_operator_sweep(const LimitSweepConfig& cfg);

// CSV "h,norm,bound,within_bound".
void write_limit_csv(std::ostream& os, const LimitSweepTable& table);

struct S0Function {
    GridFunction f;
    Interval band;
};

/// g * phi_delta with phi the bump_spectrum mollifier; band [-1/delta, 1/delta].
S0Function s0_test_function(const FunctionExpr& g, double delta, const Grid& grid);

struct DensityResult {
    GridFunction g_smooth;     // gaussian pre-mollification of f
    GridFunction approximant;  // g_smooth * phi_delta, band-limited
    Interval band;
    double sigma = 0.0;        // width of the pre-mollifier
    double delta = 0.0;
    double achieved = 0.0;     // ||f - approximant||
    double epsilon = 0.0;
    double band_mass = 0.0;    // out-of-band mass of the approximant
};

/**
 * Two-step band-limited approximation of f to accuracy epsilon: gaussian
 * smoothing to within epsilon/2, then bump_spectrum mollification with delta
 * halving from 1 until within another epsilon/2. Throws NoConvergence with
 * the best achieved error when the grid cannot reach epsilon.
 */
DensityResult density_experiment(const GridFunction& f, double epsilon, const SpaceNorm& space);

// {"delta":..,"achieved":..,"epsilon":..}
std::string to_json(const DensityResult& result);

}  // namespace fconv
