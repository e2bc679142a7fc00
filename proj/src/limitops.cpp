#include "fconv/limitops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <optional>
#include <numbers>
#include <ostream>

#include "fconv/error.hpp"

namespace fconv {

bool on_frequency_lattice(const Grid& grid, double h) {
    const double m = h / grid.freq_step();
    return std::abs(m - std::round(m)) <= 1e-9 * std::max(1.0, std::abs(m));
}

double nearest_lattice_value(const Grid& grid, double h) {
    return std::round(h / grid.freq_step()) * grid.freq_step();
}

GridFunction modulate(const GridFunction& f, double lambda) {
    const Grid& grid = f.grid();
    const std::size_t n = grid.size();
    std::vector<cplx> out(f.size());
    if (f.domain() == Domain::spatial && on_frequency_lattice(grid, lambda)) {
        // lambda = m dxi gives lambda t_j = -pi m + 2 pi (j m mod n) / n exactly.
        const auto m = static_cast<long long>(std::llround(lambda / grid.freq_step()));
        const auto nn = static_cast<long long>(n);
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        for (std::size_t j = 0; j < n; ++j) {
            const long long r = ((static_cast<long long>(j) * m) % nn + nn) % nn;
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
            out[j] = f[j] * sign * cplx{std::cos(angle), std::sin(angle)};
        }
    } else {
        for (std::size_t j = 0; j < n; ++j) out[j] = f[j] * std::polar(1.0, lambda * f.node(j));
    }
    return GridFunction(grid, std::move(out), f.domain());
}

ConjugatedResult conjugated_apply(const Symbol& a, double h, const GridFunction& f) {
    auto result = modulate(apply_multiplier(a, modulate(f, -h)), h);
    const auto expected = apply_multiplier(shift_symbol(a, h), f);
    const double residual = space_norm(lebesgue(2.0), result - expected);
    return ConjugatedResult{std::move(result), residual, !on_frequency_lattice(f.grid(), h)};
}

double out_of_band_mass(const GridFunction& f, const Interval& band) {
    const auto spectrum = dft_pair(f, Direction::forward);
    const double tol = 1e-12 * std::max(1.0, std::max(std::abs(band.lo), std::abs(band.hi)));
    double inside = 0.0, outside = 0.0;
    for (std::size_t m = 0; m < spectrum.size(); ++m) {
        const double x = spectrum.node(m);
        const double mag = std::abs(spectrum[m]);
        if (x >= band.lo - tol && x <= band.hi + tol)
            inside += mag;
        else
            outside += mag;
    }
    const double total = inside + outside;
    return total > 0.0 ? outside / total : 0.0;
}

GridFunction band_limited_bump(const Grid& grid, const Interval& band) {
    if (!(band.hi > band.lo)) throw InvalidArgument("band_limited_bump needs a non-empty band");
    const double center = 0.5 * (band.lo + band.hi);
    const double radius = 0.5 * band.length();
    const auto spectrum =
        sample_frequency(FunctionExpr::bump().dilate(radius).translate(center), grid);
    return dft_pair(spectrum, Direction::inverse);
}

// ---------------------------------------------------------------------------

bool LimitSweepTable::all_within() const {
    return std::all_of(rows.begin(), rows.end(), [](const LimitSweepRow& r) { return r.within_bound; });
}

namespace {

void validate(const LimitSweepConfig& cfg) {
    const Grid& grid = cfg.f.grid();
    if (cfg.f.domain() != Domain::spatial)
        throw PreconditionError("limit sweep: test function must be spatial samples");
    if (!(cfg.band.hi >= cfg.band.lo)) throw PreconditionError("limit sweep: empty band K");
    if (cfg.shifts.empty()) throw PreconditionError("limit sweep: no shifts given");
    for (std::size_t i = 0; i < cfg.shifts.size(); ++i) {
        const double h = cfg.shifts[i];
        if (!(h > 0.0)) throw PreconditionError("limit sweep: shifts must be positive");
        if (i > 0 && !(h > cfg.shifts[i - 1]))
            throw PreconditionError("limit sweep: shifts must be strictly increasing");
        if (!on_frequency_lattice(grid, h))
            throw PreconditionError("limit sweep: shift " + std::to_string(h) +
                                    " is not on the frequency lattice");
    }
    if (!(cfg.band.hi + cfg.shifts.back() < grid.frequency_limit()) ||
        !(cfg.band.lo >= -grid.frequency_limit()))
        throw PreconditionError("limit sweep: K + h leaves the frequency window");
    if (out_of_band_mass(cfg.f, cfg.band) >= 1e-10)
        throw PreconditionError("limit sweep: transform of f is not supported in K");
}

}  // namespace

LimitSweepTable limit_operator_sweep(const LimitSweepConfig& cfg) {
    validate(cfg);
    LimitSweepTable table;
    table.calibrated = cfg.space.is_l2();
    const double norm_f = space_norm(cfg.space, cfg.f);
    // ||chi_{K+h}||_V for a non-degenerate segment.
    constexpr double kSegmentVNorm = 3.0;

    for (double h : cfg.shifts) {
        LimitSweepRow row;
        row.h = h;
        const auto conj = conjugated_apply(cfg.symbol, h, cfg.f);
        row.norm = space_norm(cfg.space, conj.result);
        row.residual = conj.identity_residual;
        // Largest N with K + h inside (N, inf), approached from below.
        row.tail_level = cfg.band.lo + h;
        const double level = std::nextafter(row.tail_level, 0.0);
        if (table.calibrated) {
            row.tail = level > 0.0 ? tail_sup(cfg.symbol, level) : symbol_norms(cfg.symbol).sup_norm;
        } else {
            row.tail = level > 0.0 ? symbol_norms(tail_truncate(cfg.symbol, level)).v_norm
                                   : symbol_norms(cfg.symbol).v_norm;
        }
        row.bound = kSegmentVNorm * row.tail * norm_f;
        row.within_bound = row.norm <= row.bound + 1e-8;
        table.rows.push_back(row);
    }
    return table;
}

void write_limit_csv(std::ostream& os, const LimitSweepTable& table) {
    os << "h,norm,bound,within_bound\n";
    char line[160];
    for (const auto& r : table.rows) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%d\n", r.h, r.norm, r.bound,
                      r.within_bound ? 1 : 0);
        os << line;
    }
}

// ---------------------------------------------------------------------------

S0Function s0_test_function(const FunctionExpr& g, double delta, const Grid& grid) {
    if (!(delta >= 4.0 * grid.spatial_step()))
        throw PreconditionError("s0_test_function: delta must be at least four spatial steps");
    if (1.0 / delta > grid.frequency_limit())
        throw PreconditionError("s0_test_function: band [-1/delta, 1/delta] exceeds the window");
    const auto samples = sample(g, grid);
    const double peak = max_abs(samples);
    for (std::size_t j = 0; j < samples.size(); ++j)
        if (std::abs(samples.node(j)) > 0.5 * grid.half_width() &&
            std::abs(samples[j]) > 1e-12 * std::max(peak, 1e-300))
            throw PreconditionError("s0_test_function: g is not supported inside [-L/2, L/2]");

    const Mollifier phi(MollifierKind::bump_spectrum, grid);
    S0Function out{convolve(samples, phi.scaled_kernel(delta, grid)), {-1.0 / delta, 1.0 / delta}};
    if (out_of_band_mass(out.f, out.band) >= 1e-9)
        throw ConstructionError("s0_test_function: transform leaks outside the band");
    return out;
}

DensityResult density_experiment(const GridFunction& f, double epsilon, const SpaceNorm& space) {
    if (!(epsilon > 0.0)) throw InvalidArgument("density_experiment: epsilon must be positive");
    const Grid& grid = f.grid();
    const double half = 0.5 * epsilon;

    // Step 1: smooth approximant within epsilon/2.
    const Mollifier gauss(MollifierKind::gaussian, grid);
    double best = std::numeric_limits<double>::infinity();
    std::optional<GridFunction> smooth;
    double sigma = 1.0;
    for (; sigma >= 0.125 * grid.spatial_step(); sigma *= 0.5) {
        auto g = convolve(f, gauss.scaled_kernel(sigma, grid));
        const double err = space_norm(space, f - g);
        best = std::min(best, err);
        if (err < half) {
            smooth = std::move(g);
            break;
        }
    }
    if (!smooth)
        throw NoConvergence("density_experiment: smoothing cannot reach epsilon/2 on this grid",
                            best, half);

    // Step 2: band-limited mollification of the smooth approximant.
    const Mollifier bump(MollifierKind::bump_spectrum, grid);
    best = std::numeric_limits<double>::infinity();
    for (double delta = 1.0; 1.0 / delta <= grid.frequency_limit(); delta *= 0.5) {
        auto approx = convolve(*smooth, bump.scaled_kernel(delta, grid));
        const double step_error = space_norm(space, approx - *smooth);
        const double achieved = space_norm(space, f - approx);
        best = std::min(best, achieved);
        if (step_error < half) {
            DensityResult out{*smooth, std::move(approx), {-1.0 / delta, 1.0 / delta},
                              sigma,   delta,             achieved,
                              epsilon, 0.0};
            out.band_mass = out_of_band_mass(out.approximant, out.band);
            return out;
        }
    }
    throw NoConvergence("density_experiment: band-limited step cannot reach epsilon/2 on this grid",
                        best, epsilon);
}

std::string to_json(const DensityResult& result) {
    return nlohmann::json{{"delta", result.delta},
                          {"achieved", result.achieved},
                          {"epsilon", result.epsilon}}
        .dump();
}

}  // namespace fconv
