#include "fconv/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "fconv/error.hpp"
#include "fconv/probes.hpp"

namespace fconv {

SpaceNorm::SpaceNorm(double exponent, double weight_exponent)
    : p_(exponent), gamma_(weight_exponent) {
    if (std::isnan(p_) || p_ < 1.0) throw InvalidArgument("space exponent must satisfy p >= 1");
    if (!std::isfinite(gamma_)) throw InvalidArgument("weight exponent must be finite");
    if (p_ == infinity) {
        if (gamma_ != 0.0) throw InvalidArgument("weighted L^inf is not supported");
    } else if (p_ == 1.0) {
        if (!(gamma_ > -1.0 && gamma_ <= 0.0))
            throw InvalidArgument("L^1(|x|^gamma) requires -1 < gamma <= 0");
    } else if (!(gamma_ > -1.0 && gamma_ < p_ - 1.0)) {
        throw InvalidArgument("power weight |x|^gamma requires -1 < gamma < p - 1");
    }
}

double SpaceNorm::weight(double t, double spatial_step) const noexcept {
    if (gamma_ == 0.0) return 1.0;
    const double r = std::abs(t);
    // Nodes closer to 0 than half a step are the origin node.
    if (r < 0.5 * spatial_step) return gamma_ > 0.0 ? 0.0 : std::pow(spatial_step, gamma_);
    return std::pow(r, gamma_);
}

std::string SpaceNorm::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "p=";
    if (is_infinite())
        os << "inf";
    else
        os << p_;
    os << " gamma=" << gamma_;
    return os.str();
}

double space_norm(const SpaceNorm& space, const GridFunction& f) {
    if (space.is_infinite()) return max_abs(f);
    const Grid& grid = f.grid();
    const double dx =
        f.domain() == Domain::spatial ? grid.spatial_step() : grid.freq_step();
    const double p = space.exponent();
    double sum = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double a = std::abs(f[j]);
        if (a == 0.0) continue;
        const double q = j == 0 ? 0.5 * dx : dx;
        const double w = space.weight(f.node(j), dx);
        sum += q * w * (p == 2.0 ? a * a : p == 1.0 ? a : std::pow(a, p));
    }
    return p == 2.0 ? std::sqrt(sum) : p == 1.0 ? sum : std::pow(sum, 1.0 / p);
}

SpaceNorm associate_space(const SpaceNorm& space) {
    const double p = space.exponent();
    if (p == 1.0 || space.is_infinite())
        throw Unsupported("associate space is only provided for 1 < p < inf");
    const double dual = p / (p - 1.0);
    return SpaceNorm(dual, -space.weight_exponent() * dual / p);
}

bool AxiomReport::all_pass() const {
    return std::all_of(results.begin(), results.end(),
                       [](const AxiomResult& r) { return r.pass; });
}

namespace {

GridFunction restrict_to(const GridFunction& f, double lo, double hi) {
    std::vector<cplx> out(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double t = f.node(j);
        out[j] = (t >= lo && t < hi) ? f[j] : cplx{};
    }
    return GridFunction(f.grid(), std::move(out), f.domain());
}

GridFunction interval_indicator(const Grid& grid, double lo, double hi) {
    return sample(FunctionExpr::indicator(lo, hi), grid);
}

// Hoelder constant of the interval [lo, hi): the associate norm of its
// indicator, the weighted measure for p = 1, or its length for p = inf.
double interval_constant(const SpaceNorm& space, const Grid& grid, double lo, double hi) {
    const auto chi = interval_indicator(grid, lo, hi);
    if (space.is_infinite()) return quadrature(chi).real();
    if (space.exponent() == 1.0) {
        double c = 0.0;
        for (std::size_t j = 0; j < grid.size(); ++j)
            if (chi[j] != cplx{})
                c = std::max(c, 1.0 / space.weight(grid.spatial_node(j), grid.spatial_step()));
        return c;
    }
    return space_norm(associate_space(space), chi);
}

}  // namespace

AxiomReport verify_axioms(const SpaceNorm& space, int trials, std::uint64_t seed) {
    return verify_axioms(space, trials, seed, make_grid(8.0, 256));
}

AxiomReport verify_axioms(const SpaceNorm& space, int trials, std::uint64_t seed,
                          const Grid& grid) {
    if (trials < 1) throw InvalidArgument("verify_axioms needs at least one trial");
    Rng rng(seed);
    const double L = grid.half_width();

    AxiomResult a1{"A1", true, std::numeric_limits<double>::max(), std::nullopt};
    AxiomResult a2{"A2", true, std::numeric_limits<double>::max(), std::nullopt};
    AxiomResult a3{"A3", true, std::numeric_limits<double>::max(), std::nullopt};
    AxiomResult a4{"A4", true, std::numeric_limits<double>::max(), std::nullopt};
    AxiomResult a5{"A5", true, std::numeric_limits<double>::max(), 0.0};

    if (space_norm(space, GridFunction::zeros(grid)) != 0.0) a1.pass = false;

    for (int trial = 0; trial < trials; ++trial) {
        const auto f = random_probe(grid, rng);
        const auto g = random_probe(grid, rng);
        const double nf = space_norm(space, f);
        const double ng = space_norm(space, g);

        // A1: definiteness, homogeneity, triangle inequality.
        if (!(nf > 0.0)) a1.pass = false;
        const cplx alpha = std::polar(uniform(rng, 0.1, 10.0), uniform(rng, -3.0, 3.0));
        const double homog_err =
            std::abs(space_norm(space, alpha * f) - std::abs(alpha) * nf) / (std::abs(alpha) * nf);
        const double tri_slack = (nf + ng - space_norm(space, f + g)) / (nf + ng);
        a1.worst_slack = std::min({a1.worst_slack, tri_slack, -homog_err});
        if (homog_err > 1e-9 || tri_slack < -1e-9) a1.pass = false;

        // A2: pointwise domination |g| <= |f|.
        std::vector<cplx> dominated(f.size());
        for (std::size_t j = 0; j < f.size(); ++j) dominated[j] = uniform(rng, 0.0, 1.0) * f[j];
        const double lattice_slack = nf - space_norm(space, GridFunction(grid, dominated));
        a2.worst_slack = std::min(a2.worst_slack, lattice_slack);
        if (lattice_slack < -1e-12) a2.pass = false;

        // A3: truncations f * chi_[-kL/8, kL/8) increase to f.
        double previous = 0.0;
        for (int k = 1; k <= 8; ++k) {
            const double nk = space_norm(space, restrict_to(f, -k * L / 8.0, k * L / 8.0));
            const double step = (nk - previous) / nf;
            a3.worst_slack = std::min(a3.worst_slack, step);
            if (step < -1e-12) a3.pass = false;
            previous = nk;
        }
        if (std::abs(previous - nf) > 1e-12 * nf) a3.pass = false;

        // A4: indicators of finite intervals have finite norm. The margin
        // 1/(1 + ||chi_E||) is positive exactly when the norm is finite.
        const double lo = uniform(rng, -L, 0.8 * L);
        const double hi = lo + uniform(rng, 4.0 * grid.spatial_step(), L - lo);
        const double nchi = space_norm(space, interval_indicator(grid, lo, hi));
        if (!std::isfinite(nchi) || !(nchi > 0.0)) a4.pass = false;
        a4.worst_slack = std::min(a4.worst_slack, 1.0 / (1.0 + nchi));

        // A5: int_E |f| <= C_E ||f|| with C_E from Hoelder.
        const double local = quadrature(abs(restrict_to(f, lo, hi))).real();
        const double ratio = local / nf;
        const double constant = interval_constant(space, grid, lo, hi);
        a5.empirical_constant = std::max(*a5.empirical_constant, ratio);
        const double slack = (constant - ratio) / constant;
        a5.worst_slack = std::min(a5.worst_slack, slack);
        if (!std::isfinite(ratio) || slack < -1e-9) a5.pass = false;
    }

    return AxiomReport{space, {a1, a2, a3, a4, a5}};
}

std::string to_json(const AxiomReport& report) {
    auto arr = nlohmann::json::array();
    for (const auto& r : report.results) {
        nlohmann::json obj = {{"axiom", r.axiom}, {"pass", r.pass}, {"worst_slack", r.worst_slack}};
        if (r.empirical_constant) obj["empirical_constant"] = *r.empirical_constant;
        arr.push_back(std::move(obj));
    }
    return arr.dump();
}

}  // namespace fconv
