#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "fconv/error.hpp"
#include "fconv/grid.hpp"
#include "fconv/probes.hpp"

using namespace fconv;
using Catch::Approx;

namespace {

// Dense matrix of the forward map F(x_k) = dx sum_j f(t_j) e^{i t_j x_k},
// evaluated straight from the node coordinates.
std::vector<cplx> matrix_forward(const GridFunction& f) {
    const Grid& g = f.grid();
    std::vector<cplx> out(g.size());
    for (std::size_t m = 0; m < g.size(); ++m)
        for (std::size_t j = 0; j < g.size(); ++j)
            out[m] += g.spatial_step() * f[j] *
                      std::exp(cplx{0.0, g.spatial_node(j) * g.frequency_node(m)});
    return out;
}

double energy(const GridFunction& f, double step) {
    double s = 0.0;
    for (const auto& v : f.values()) s += std::norm(v);
    return s * step;
}

}  // namespace

TEST_CASE("make_grid arithmetic") {
    const auto g = make_grid(8.0, 16);
    CHECK(g.spatial_step() == 1.0);
    CHECK(g.freq_step() == Approx(std::numbers::pi / 8));
    const auto x = g.frequency_nodes();
    REQUIRE(x.size() == 16);
    CHECK(x.front() == Approx(-std::numbers::pi));
    CHECK(x.back() == Approx(7 * std::numbers::pi / 8));
    CHECK(g.spatial_nodes().size() == 16);
    CHECK(g.spatial_nodes().front() == -8.0);

    const auto h = make_grid(std::numbers::pi, 8);
    CHECK(h.spatial_step() * h.freq_step() == Approx(2 * std::numbers::pi / 8));
    CHECK(h.frequency_limit() == Approx(std::numbers::pi * 8 / (2 * std::numbers::pi)));
}

TEST_CASE("make_grid rejects bad parameters") {
    CHECK_THROWS_AS(make_grid(8.0, 7), InvalidArgument);
    CHECK_THROWS_AS(make_grid(8.0, 6), InvalidArgument);
    CHECK_THROWS_AS(make_grid(0.0, 16), InvalidArgument);
    CHECK_THROWS_AS(make_grid(-1.0, 16), InvalidArgument);
}

TEST_CASE("grid function invariants") {
    const auto g = make_grid(8.0, 16);
    CHECK_THROWS_AS(GridFunction(g, std::vector<cplx>(15)), InvalidArgument);
    std::vector<cplx> bad(16);
    bad[3] = std::nan("");
    CHECK_THROWS_AS(GridFunction(g, bad), EvaluationError);
    const auto other = make_grid(4.0, 16);
    CHECK_THROWS_AS(GridFunction::zeros(g) + GridFunction::zeros(other), InvalidArgument);
}

TEST_CASE("sample uses the half-open indicator convention") {
    const auto g = make_grid(8.0, 16);
    const auto chi = sample(FunctionExpr::indicator(-1, 1), g);
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double t = g.spatial_node(j);
        CHECK(chi[j].real() == ((t == -1.0 || t == 0.0) ? 1.0 : 0.0));
    }
    const auto closed = sample(FunctionExpr::closed_indicator(-1, 1), g);
    CHECK(closed[9].real() == 1.0);  // t = 1

    CHECK(FunctionExpr::bump()(0.0) == Approx(0.367879).margin(1e-6));
    CHECK(FunctionExpr::bump()(1.0) == 0.0);

    const auto ones = sample(FunctionExpr::constant(1.0), g);
    for (const auto& v : ones.values()) CHECK(v == cplx{1.0});

    const auto overflow = FunctionExpr::constant(1e308) * FunctionExpr::constant(1e308);
    CHECK_THROWS_AS(sample(overflow, g), EvaluationError);
}

TEST_CASE("parsed function descriptors evaluate like their factories") {
    const auto e = FunctionExpr::parse("sum(scale(gaussian(2),3),translate(bump,1))");
    const auto f = FunctionExpr::gaussian(2).scale(3) + FunctionExpr::bump().translate(1);
    for (double t : {-3.0, -0.5, 0.0, 0.7, 1.2, 4.0}) CHECK(e(t) == f(t));
    CHECK(FunctionExpr::parse("poly_gauss(1)")(0.5) == Approx(0.5 * std::exp(-0.25)));
    CHECK(FunctionExpr::parse("rational_decay")(2.0) == Approx(0.2));
    CHECK_THROWS_AS(FunctionExpr::parse("nope(1)"), ParseError);
    CHECK_THROWS_AS(FunctionExpr::parse("indicator(1)"), ParseError);
}

TEST_CASE("quadrature") {
    const auto fine = make_grid(8.0, 4096);
    const double dx = fine.spatial_step();
    CHECK(std::abs(quadrature(sample(FunctionExpr::indicator(-1, 1), fine)).real() - 2.0) <= dx);

    // Closed form of the truncated normal mass is erf(8/sqrt 2).
    const auto g = make_grid(8.0, 512);
    const cplx mass = quadrature(sample(FunctionExpr::normal(1.0), g));
    CHECK(std::abs(mass.real() - std::erf(8.0 / std::sqrt(2.0))) < 1e-8);
    CHECK(std::abs(mass.real() - 1.0) < 1e-8);

    CHECK(quadrature(GridFunction::zeros(g)) == cplx{});

    // The half-weight falls on the edge node only.
    std::vector<cplx> v(g.size());
    v[0] = 1.0;
    v[1] = 1.0;
    CHECK(quadrature(GridFunction(g, v)).real() == Approx(1.5 * g.spatial_step()));
}

TEST_CASE("forward transform matches the dense matrix oracle") {
    const auto g = make_grid(3.0, 16);
    Rng rng(7);
    const auto f = random_probe(g, rng);
    const auto oracle = matrix_forward(f);
    for (auto path : {TransformPath::fast, TransformPath::direct}) {
        const auto hat = dft_pair(f, Direction::forward, path);
        REQUIRE(hat.domain() == Domain::frequency);
        for (std::size_t m = 0; m < g.size(); ++m) CHECK(std::abs(hat[m] - oracle[m]) < 1e-12);
    }
    // Parseval on the oracle itself fixes the constant 2 pi.
    double oracle_energy = 0.0;
    for (const auto& v : oracle) oracle_energy += std::norm(v) * g.freq_step();
    CHECK(oracle_energy == Approx(2 * std::numbers::pi * energy(f, g.spatial_step())).epsilon(1e-12));
}

TEST_CASE("round trip is the identity") {
    for (std::size_t n : {8u, 64u, 256u}) {
        const auto g = make_grid(5.0, n);
        Rng rng(n);
        std::vector<cplx> v(n);
        for (auto& c : v) c = {uniform(rng, -1, 1), uniform(rng, -1, 1)};
        const GridFunction f(g, v);
        const GridFunction spectrum(g, v, Domain::frequency);
        const auto back = dft_pair(dft_pair(f, Direction::forward), Direction::inverse);
        CHECK(max_abs_diff(back, f) < 1e-12);
        const auto forth = dft_pair(dft_pair(spectrum, Direction::inverse), Direction::forward);
        CHECK(max_abs_diff(forth, spectrum) < 1e-12);
    }
}

TEST_CASE("fast and direct transforms agree, including non powers of two") {
    for (std::size_t n : {8u, 96u, 256u, 1000u}) {
        const auto g = make_grid(6.0, n);
        Rng rng(n + 1);
        const auto f = random_probe(g, rng);
        const auto fast = dft_pair(f, Direction::forward, TransformPath::fast);
        const auto direct = dft_pair(f, Direction::forward, TransformPath::direct);
        CHECK(max_abs_diff(fast, direct) < 1e-12);
        CHECK(max_abs_diff(dft_pair(fast, Direction::inverse, TransformPath::fast),
                           dft_pair(fast, Direction::inverse, TransformPath::direct)) < 1e-12);
    }
}

TEST_CASE("gaussian transform matches the continuum formula") {
    const auto g = make_grid(16.0, 1024);
    const auto hat = dft_pair(sample(FunctionExpr::gaussian(1.0), g), Direction::forward);
    for (std::size_t m = 0; m < g.size(); ++m) {
        const double x = g.frequency_node(m);
        if (std::abs(x) > 6.0) continue;
        const double exact = std::sqrt(2 * std::numbers::pi) * std::exp(-x * x / 2);
        CHECK(std::abs(hat[m] - exact) / exact < 1e-6);
    }
}

TEST_CASE("transform is linear and satisfies Parseval with factor 2 pi") {
    const auto g = make_grid(10.0, 256);
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_probe(g, rng);
        const auto h = random_probe(g, rng);
        const cplx alpha{uniform(rng, -2, 2), uniform(rng, -2, 2)};
        const cplx beta{uniform(rng, -2, 2), uniform(rng, -2, 2)};
        const auto lhs = dft_pair(alpha * f + beta * h, Direction::forward);
        const auto rhs = alpha * dft_pair(f, Direction::forward) + beta * dft_pair(h, Direction::forward);
        CHECK(max_abs_diff(lhs, rhs) < 1e-12 * std::max(1.0, max_abs(lhs)));

        const double spatial = energy(f, g.spatial_step());
        const double spectral = energy(dft_pair(f, Direction::forward), g.freq_step());
        CHECK(std::abs(spectral - 2 * std::numbers::pi * spatial) <= 1e-10 * std::max(1.0, spectral));
    }
}

TEST_CASE("transform direction must match the sample domain") {
    const auto g = make_grid(8.0, 16);
    CHECK_THROWS_AS(dft_pair(GridFunction::zeros(g, Domain::frequency), Direction::forward),
                    InvalidArgument);
    CHECK_THROWS_AS(dft_pair(GridFunction::zeros(g), Direction::inverse), InvalidArgument);
}

TEST_CASE("csv serialization") {
    const auto g = make_grid(8.0, 16);
    std::ostringstream os;
    write_csv(os, sample(FunctionExpr::indicator(-1, 1), g));
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "index,t,re,im");
    std::getline(in, line);
    CHECK(line == "0,-8,0,0");
    for (int i = 0; i < 7; ++i) std::getline(in, line);
    CHECK(line == "7,-1,1,0");
}
