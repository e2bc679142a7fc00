// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "fconv/error.hpp"
#include "fconv/fourier.hpp"
#include "fconv/grid.hpp"
#include "fconv/limitops.hpp"
#include "fconv/maximal.hpp"
#include "fconv/probes.hpp"
#include "fconv/spaces.hpp"
#include "fconv/symbols.hpp"

using namespace fconv;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail = what;
            pass = false;
        }
    }
};

std::string fmtd(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double l2(const GridFunction& f) { return space_norm(lebesgue(2), f); }

Verdict exact_v_norm() {
    Verdict v;
    Rng rng(101);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double c = uniform(rng, -20, 20);
        const double d = c + uniform(rng, 0.01, 10);
        const auto n = symbol_norms(Symbol::indicator(c, d));
        worst = std::max({worst, std::abs(n.sup_norm - 1), std::abs(n.variation - 2), std::abs(n.v_norm - 3)});
    }
    v.require(worst <= 1e-12, "indicator norms off by " + fmtd("%.3e", worst));
    if (v.pass) v.detail = "max deviation " + fmtd("%.1e", worst);
    return v;
}

Verdict round_trip_parseval() {
    Verdict v;
    Rng rng(102);
    double trip = 0.0, parseval = 0.0;
    for (std::size_t n : {64u, 256u, 1024u}) {
        const auto g = make_grid(8.0, n);
        for (int trial = 0; trial < 10; ++trial) {
            const auto f = random_probe(g, rng);
            const auto hat = dft_pair(f, Direction::forward);
            trip = std::max(trip, max_abs_diff(dft_pair(hat, Direction::inverse), f));
            double es = 0.0, ef = 0.0;
            for (const auto& c : f.values()) es += std::norm(c) * g.spatial_step();
            for (const auto& c : hat.values()) ef += std::norm(c) * g.freq_step();
            parseval = std::max(parseval, std::abs(ef - 2 * std::numbers::pi * es) / std::max(1.0, ef));
        }
    }
    v.require(trip <= 1e-10, "round trip error " + fmtd("%.3e", trip));
    v.require(parseval <= 1e-10, "Parseval defect " + fmtd("%.3e", parseval));
    if (v.pass) v.detail = "round trip " + fmtd("%.1e", trip) + ", Parseval " + fmtd("%.1e", parseval);
    return v;
}

Symbol random_symbol(Rng& rng) {
    switch (static_cast<int>(uniform(rng, 0, 4))) {
        case 0: {
            const double c = uniform(rng, -10, 10);
            return Symbol::indicator(c, c + uniform(rng, 0.5, 10));
        }
        case 1: return shift_symbol(Symbol::arctan(), uniform(rng, -5, 5));
        case 2: return Symbol::rational_decay(uniform(rng, 0.5, 2));
        default: return Symbol::arctan() * Symbol::rational_decay() + Symbol::constant(0.5);
    }
}

Verdict modulation_shift_identity() {
    Verdict v;
    const auto g = make_grid(8.0, 256);
    Rng rng(103);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_symbol(rng);
        // Spectrum on bins [lo, hi], shifted by s bins, all inside the window.
        const auto lo = static_cast<std::size_t>(uniform(rng, 0, 120));
        const auto hi = lo + static_cast<std::size_t>(uniform(rng, 1, 40));
        const auto s = static_cast<std::size_t>(uniform(rng, 1, static_cast<double>(g.size() - hi)));
        std::vector<cplx> spectrum(g.size());
        for (std::size_t m = lo; m <= hi; ++m) spectrum[m] = {uniform(rng, -1, 1), uniform(rng, -1, 1)};
        const auto f = dft_pair(GridFunction(g, spectrum, Domain::frequency), Direction::inverse);
        const auto out = conjugated_apply(a, static_cast<double>(s) * g.freq_step(), f);
        v.require(!out.off_lattice, "lattice shift flagged off-lattice");
        worst = std::max(worst, out.identity_residual);
    }
    v.require(worst < 1e-10, "identity residual " + fmtd("%.3e", worst));
    if (v.pass) v.detail = "max residual " + fmtd("%.1e", worst);
    return v;
}

Verdict annihilation() {
    Verdict v;
    const auto g = make_grid(16.0, 2048);
    const Interval band{1, 2};
    const auto f = band_limited_bump(g, band);
    const double norm_f = l2(f);

    std::vector<double> all;
    for (int m = 1; band.hi + m * g.freq_step() < g.frequency_limit(); ++m) all.push_back(m * g.freq_step());
    const auto chi = limit_operator_sweep({Symbol::indicator(-1, 1), f, band, all, lebesgue(2)});
    double worst = 0.0;
    for (const auto& r : chi.rows) {
        if (band.lo + r.h > 1) worst = std::max(worst, r.norm);
        v.require(r.norm <= 3 * tail_sup(Symbol::indicator(-1, 1), std::nextafter(r.tail_level, 0.0)) * norm_f + 1e-8,
                  "indicator row above the bound");
    }
    v.require(worst < 1e-10, "indicator conjugated norm " + fmtd("%.3e", worst));

    const auto a = Symbol::rational_decay();
    std::vector<double> shifts;
    for (double h : {8.0, 16.0, 32.0}) shifts.push_back(nearest_lattice_value(g, h));
    const auto rat = limit_operator_sweep({a, f, band, shifts, lebesgue(2)});
    std::string ratios;
    for (std::size_t i = 0; i < rat.rows.size(); ++i) {
        const auto& r = rat.rows[i];
        v.require(r.norm <= 3 * tail_sup(a, std::nextafter(r.tail_level, 0.0)) * norm_f + 1e-8,
                  "rational row above the bound at h=" + fmtd("%.3f", r.h));
        if (i > 0) {
            const double ratio = r.norm / rat.rows[i - 1].norm;
            v.require(ratio >= 0.125 && ratio <= 0.5, "doubling ratio " + fmtd("%.4f", ratio));
            ratios += (ratios.empty() ? "" : ", ") + fmtd("%.4f", ratio);
        }
    }
    if (v.pass)
        v.detail = std::to_string(chi.rows.size()) + " indicator shifts below " + fmtd("%.1e", worst) +
                   "; rational doubling ratios " + ratios;
    return v;
}

Verdict maximal_operator() {
    Verdict v;
    Rng rng(105);
    double diff = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 8 + 2 * static_cast<std::size_t>(uniform(rng, 0, 253));
        const auto g = make_grid(uniform(rng, 1, 16), n);
        const auto f = random_probe(g, rng);
        diff = std::max(diff, max_abs_diff(maximal_function(f, MaximalMode::fast), maximal_function(f, MaximalMode::oracle)));
    }
    v.require(diff <= 1e-12, "fast vs oracle " + fmtd("%.3e", diff));

    const auto g = make_grid(16.0, 1024);
    const double dx = g.spatial_step();
    const auto m = maximal_function(sample(FunctionExpr::indicator(-1, 1), g));
    double worst = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double t = std::abs(g.spatial_node(j));
        if (t == 1.5 || t == 2.0 || t == 4.0) worst = std::max(worst, std::abs(m[j].real() - 2 / (1 + t)));
    }
    v.require(worst <= 2 * dx, "M chi off 2/(1+|t|) by " + fmtd("%.3e", worst));

    const auto mc = maximal_function(sample(FunctionExpr::closed_indicator(-1, 1), g));
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double t = std::abs(g.spatial_node(j));
        if (t > 1) v.require(1 / t <= mc[j].real(), "1/|t| exceeds M chi at t=" + fmtd("%.4f", g.spatial_node(j)));
    }
    if (v.pass) v.detail = "fast vs oracle " + fmtd("%.1e", diff) + ", closed-form gap " + fmtd("%.2e", worst);
    return v;
}

Verdict mollification() {
    Verdict v;
    const auto g = make_grid(16.0, 1024);
    const auto f = sample(FunctionExpr::bump().dilate(2.0), g);
    std::vector<double> deltas;
    for (double d = 1.0; d >= 1.0 / 64; d /= 2) deltas.push_back(d);
    std::string finals;
    for (auto kind : {MollifierKind::gaussian, MollifierKind::bump_spectrum}) {
        const char* name = kind == MollifierKind::gaussian ? "gaussian" : "bump_spectrum";
        const auto rows = mollify_sweep(f, make_mollifier(kind, g), deltas, lebesgue(2));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            v.require(rows[i].pointwise_ok, std::string(name) + " pointwise bound fails at delta=" + fmtd("%g", rows[i].delta));
            if (i > 0) v.require(rows[i].error < rows[i - 1].error, std::string(name) + " error not decreasing");
        }
        v.require(rows.back().error < 1e-3, std::string(name) + " final error " + fmtd("%.3e", rows.back().error));
        finals += std::string(finals.empty() ? "" : ", ") + name + " " + fmtd("%.2e", rows.back().error);
    }
    if (v.pass) v.detail = "final errors " + finals;
    return v;
}

Verdict band_limit() {
    Verdict v;
    const auto g = make_grid(16.0, 1024);
    const auto phi = make_mollifier(MollifierKind::bump_spectrum, g);
    const auto spectrum = dft_pair(phi.kernel(), Direction::forward);
    double worst = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m)
        if (std::abs(g.frequency_node(m)) > 1) worst = std::max(worst, std::abs(spectrum[m]));
    Rng rng(107);
    for (double delta : {1.0, 0.5, 0.25, 0.125}) {
        const auto gd = random_probe(g, rng);
        const auto s = dft_pair(convolve(gd, phi.scaled_kernel(delta, g)), Direction::forward);
        for (std::size_t m = 0; m < g.size(); ++m)
            if (std::abs(g.frequency_node(m)) > 1 / delta) worst = std::max(worst, std::abs(s[m]));
    }
    v.require(worst < 1e-9, "out-of-band magnitude " + fmtd("%.3e", worst));
    if (v.pass) v.detail = "max out-of-band magnitude " + fmtd("%.1e", worst);
    return v;
}

Verdict density() {
    Verdict v;
    const auto g = make_grid(16.0, 4096);
    try {
        const auto r = density_experiment(sample(FunctionExpr::indicator(-1, 1), g), 0.1, lebesgue(2));
        v.require(r.achieved < 0.1, "achieved " + fmtd("%.4f", r.achieved));
        v.require(r.band_mass < 1e-9, "out-of-band mass " + fmtd("%.3e", r.band_mass));
        if (v.pass)
            v.detail = "achieved " + fmtd("%.4f", r.achieved) + " with K=[-" + fmtd("%g", r.band.hi) + "," +
                       fmtd("%g", r.band.hi) + "], mass outside " + fmtd("%.1e", r.band_mass);
    } catch (const NoConvergence& e) {
        v.require(false, "no convergence, best " + fmtd("%.4f", e.lower()));
    }
    return v;
}

Verdict stechkin_l2() {
    Verdict v;
    const auto g = make_grid(8.0, 256);
    std::string ratios;
    for (const auto& a : {Symbol::indicator(-1, 1), Symbol::arctan(), Symbol::rational_decay()}) {
        const double lower = multiplier_norm_lower_bound(a, lebesgue(2), 20, 109, g);
        const double vn = symbol_norms(a).v_norm;
        const double diag = max_abs(sample_symbol(a, g));
        v.require(lower <= vn + 1e-8, a.describe() + " lower bound above V-norm");
        v.require(std::abs(lower - diag) <= 1e-10, a.describe() + " misses the diagonal norm by " + fmtd("%.3e", std::abs(lower - diag)));
        ratios += (ratios.empty() ? "" : ", ") + fmtd("%.4f", lower / vn);
    }
    if (v.pass) v.detail = "ratios " + ratios;
    return v;
}

Verdict axioms() {
    Verdict v;
    for (const auto& space : {SpaceNorm(2, 0), SpaceNorm(3, 1), SpaceNorm(1.5, 0)}) {
        const auto report = verify_axioms(space, 50, 110);
        for (const auto& r : report.results)
            v.require(r.pass, space.describe() + " " + r.axiom + " slack " + fmtd("%.3e", r.worst_slack));
    }
    if (v.pass) v.detail = "A1-A5 on three spaces";
    return v;
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Verdict()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "exact V-norm of indicators", 1, exact_v_norm},
        {2, "round trip and Parseval", 1, round_trip_parseval},
        {3, "modulation-shift identity", 5, modulation_shift_identity},
        {4, "annihilation and tail decay", 10, annihilation},
        {5, "maximal operator", 30, maximal_operator},
        {6, "mollification", 10, mollification},
        {7, "band limit of the bump mollifier", 2, band_limit},
        {8, "density of band-limited functions", 10, density},
        {9, "Stechkin bound on L2", 5, stechkin_l2},
        {10, "Banach function norm axioms", 10, axioms},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.budget_seconds) {
            if (v.pass) v.detail = "runtime over budget";
            v.pass = false;
        }
        if (!v.pass) ++failed;
        std::printf("[%s] criterion %2d: %s (%s; %.2fs of %.0fs)\n", v.pass ? "PASS" : "FAIL", c.id, c.name,
                    v.detail.c_str(), secs, c.budget_seconds);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
