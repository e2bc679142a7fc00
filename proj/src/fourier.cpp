#include "fconv/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "fconv/error.hpp"
#include "fconv/maximal.hpp"
#include "fconv/probes.hpp"

namespace fconv {

GridFunction apply_multiplier(const GridFunction& multiplier, const GridFunction& f) {
    if (multiplier.domain() != Domain::frequency)
        throw InvalidArgument("apply_multiplier: multiplier must be sampled on frequency nodes");
    if (multiplier.grid() != f.grid()) throw InvalidArgument("apply_multiplier: grid mismatch");
    const auto spectrum = dft_pair(f, Direction::forward);
    return dft_pair(pointwise_product(multiplier, spectrum), Direction::inverse);
}

GridFunction apply_multiplier(const Symbol& a, const GridFunction& f) {
    return apply_multiplier(sample_symbol(a, f.grid()), f);
}

GridFunction convolve(const GridFunction& f, const GridFunction& g) {
    require_compatible(f, g, "convolve");
    if (f.domain() != Domain::spatial) throw InvalidArgument("convolve expects spatial samples");
    const auto product =
        pointwise_product(dft_pair(f, Direction::forward), dft_pair(g, Direction::forward));
    return dft_pair(product, Direction::inverse);
}

// ---------------------------------------------------------------------------

namespace {

GridFunction normalized(GridFunction kernel) {
    const cplx mass = quadrature(kernel);
    if (std::abs(mass) < 1e-14)
        throw ConstructionError("mollifier normalization is degenerate on this grid");
    kernel *= 1.0 / mass;
    return kernel;
}

GridFunction gaussian_kernel(double delta, const Grid& grid) {
    return normalized(sample(FunctionExpr::normal(delta), grid));
}

GridFunction bump_kernel(double delta, const Grid& grid) {
    const auto spectrum = sample_frequency(FunctionExpr::bump().dilate(1.0 / delta), grid);
    return normalized(dft_pair(spectrum, Direction::inverse));
}

}  // namespace

GridFunction radial_majorant(const GridFunction& f) {
    // Node j and node n - j sit at the same distance from the origin; j = 0 is
    // the edge node -L and j = n/2 the origin.
    const std::size_t n = f.size();
    std::vector<cplx> out(n);
    double running = 0.0;
    for (std::size_t j = 0; j <= n / 2; ++j) {
        const std::size_t mirror = (n - j) % n;
        running = std::max({running, std::abs(f[j]), std::abs(f[mirror])});
        out[j] = running;
        out[mirror] = running;
    }
    return GridFunction(f.grid(), std::move(out), f.domain());
}

Mollifier::Mollifier(MollifierKind kind, const Grid& grid)
    : kind_(kind),
      kernel_(kind == MollifierKind::gaussian ? gaussian_kernel(1.0, grid) : bump_kernel(1.0, grid)),
      majorant_l1_(quadrature(radial_majorant(kernel_)).real()) {}

GridFunction Mollifier::scaled_kernel(double delta, const Grid& grid) const {
    if (!(delta > 0.0)) throw InvalidArgument("mollifier scale must be positive");
    return kind_ == MollifierKind::gaussian ? gaussian_kernel(delta, grid) : bump_kernel(delta, grid);
}

Mollifier make_mollifier(MollifierKind kind, const Grid& grid) { return Mollifier(kind, grid); }

std::vector<SweepRow> mollify_sweep(const GridFunction& f, const Mollifier& phi,
                                    const std::vector<double>& deltas, const SpaceNorm& space) {
    const Grid& grid = f.grid();
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const double delta = deltas[i];
        if (i > 0 && !(delta < deltas[i - 1]))
            throw PreconditionError("mollify_sweep: deltas must be strictly decreasing");
        if (!(delta >= 0.5 * grid.spatial_step()))
            throw PreconditionError("mollify_sweep: delta is below the grid resolution");
        if (phi.kind() == MollifierKind::bump_spectrum && 1.0 / delta > grid.frequency_limit())
            throw PreconditionError("mollify_sweep: band [-1/delta, 1/delta] exceeds the window");
    }

    const auto mf = maximal_function(f);
    std::vector<SweepRow> rows;
    rows.reserve(deltas.size());
    for (double delta : deltas) {
        const auto smoothed = convolve(f, phi.scaled_kernel(delta, grid));
        SweepRow row;
        row.delta = delta;
        row.error = space_norm(space, smoothed - f);
        row.bound = space_norm(space, smoothed);
        row.pointwise_excess = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < f.size(); ++j)
            row.pointwise_excess = std::max(
                row.pointwise_excess, std::abs(smoothed[j]) - phi.majorant_l1() * mf[j].real());
        row.pointwise_ok = row.pointwise_excess <= 1e-8;
        rows.push_back(row);
    }
    return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "delta,error,bound,pointwise_ok\n";
    char line[160];
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%d\n", r.delta, r.error, r.bound,
                      r.pointwise_ok ? 1 : 0);
        os << line;
    }
}

// ---------------------------------------------------------------------------

namespace {

// Largest |a(x_k)| reached by power iteration on the diagonal operator,
// followed by the pure-frequency probe at the dominant component.
double diagonal_power_iteration(const GridFunction& multiplier, const SpaceNorm& space, Rng& rng) {
    const std::size_t n = multiplier.size();
    std::vector<double> weight(n);
    for (std::size_t k = 0; k < n; ++k) weight[k] = std::norm(multiplier[k]);
    std::vector<cplx> v(n);
    for (auto& c : v) c = {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};

    // Power iteration with repeated squaring, v <- A v and A <- A^2 (both
    // rescaled), so near-degenerate leading entries still separate.
    std::vector<double> power = weight;
    double estimate = 0.0;
    for (int iter = 0; iter < 128; ++iter) {
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            num += weight[k] * std::norm(v[k]);
            den += std::norm(v[k]);
        }
        if (den == 0.0) break;
        const double next = std::sqrt(num / den);
        const bool settled = iter > 0 && std::abs(next - estimate) <= 1e-16 * std::max(1.0, next);
        estimate = std::max(estimate, next);
        if (settled) break;

        double vmax = 0.0, pmax = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            v[k] *= power[k];
            vmax = std::max(vmax, std::abs(v[k]));
            power[k] *= power[k];
            pmax = std::max(pmax, power[k]);
        }
        if (vmax == 0.0 || pmax == 0.0) break;
        for (auto& c : v) c /= vmax;
        for (auto& p : power) p /= pmax;
    }

    std::size_t dominant = 0;
    for (std::size_t k = 1; k < n; ++k)
        if (std::abs(v[k]) > std::abs(v[dominant])) dominant = k;
    std::vector<cplx> values(n);
    values[dominant] = 1.0;
    const auto probe = dft_pair(GridFunction(multiplier.grid(), values, Domain::frequency),
                                Direction::inverse);
    const double ratio =
        space_norm(space, apply_multiplier(multiplier, probe)) / space_norm(space, probe);
    return std::max(estimate, ratio);
}

}  // namespace

double multiplier_norm_lower_bound(const Symbol& a, const SpaceNorm& space, int trials,
                                   std::uint64_t seed, const Grid& grid) {
    if (trials < 1) throw InvalidArgument("multiplier_norm_lower_bound needs at least one trial");
    Rng rng(seed);
    const auto multiplier = sample_symbol(a, grid);
    double bound = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        const auto f = random_probe(grid, rng);
        const double nf = space_norm(space, f);
        if (nf == 0.0) continue;
        bound = std::max(bound, space_norm(space, apply_multiplier(multiplier, f)) / nf);
    }
    if (space.is_l2()) bound = std::max(bound, diagonal_power_iteration(multiplier, space, rng));
    return bound;
}

std::string StechkinReport::summary() const {
    char line[160];
    std::snprintf(line, sizeof line, "lower=%.3f v_norm=%.3f ratio=%.3f", lower, v_norm, ratio);
    return line;
}

StechkinReport stechkin_check(const Symbol& a, const SpaceNorm& space, int trials,
                              std::uint64_t seed, const Grid& grid) {
    StechkinReport report;
    report.v_norm = symbol_norms(a).v_norm;
    report.lower = multiplier_norm_lower_bound(a, space, trials, seed, grid);
    report.ratio = report.v_norm > 0.0 ? report.lower / report.v_norm : 0.0;
    report.calibrated = space.is_l2();
    report.violation = report.calibrated && report.ratio > 1.0 + 1e-12;
    return report;
}

SchwartzReport schwartz_embedding_check(const FunctionExpr& f, const SpaceNorm& space,
                                        const Grid& grid) {
    const double L = grid.half_width();
    const std::size_t dense = 8 * grid.size();
    SchwartzReport report;
    double edge = 0.0;
    for (std::size_t i = 0; i <= dense; ++i) {
        const double t = -L + 2.0 * L * static_cast<double>(i) / static_cast<double>(dense);
        const double v = std::abs(f(t));
        if (!std::isfinite(v)) throw EvaluationError("'" + f.describe() + "' is not finite");
        report.rho0 = std::max(report.rho0, v);
        report.rho1 = std::max(report.rho1, std::abs(t) * v);
        if (std::abs(t) >= 0.9 * L) edge = std::max(edge, std::abs(t) * v);
    }
    if (edge > 1e-10 * std::max(report.rho1, 1.0))
        throw Inconclusive("'" + f.describe() + "': |x f(x)| has not decayed at the window edge");

    const auto chi = sample(FunctionExpr::closed_indicator(-1.0, 1.0), grid);
    report.norm_f = space_norm(space, sample(f, grid));
    report.norm_chi = space_norm(space, chi);
    report.norm_max_chi = space_norm(space, maximal_function(chi));
    report.rhs = report.rho0 * report.norm_chi + report.rho1 * report.norm_max_chi;
    report.holds = report.norm_f <= report.rhs + 1e-8;
    return report;
}

}  // namespace fconv
