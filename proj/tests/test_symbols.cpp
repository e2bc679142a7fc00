#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "fconv/error.hpp"
#include "fconv/probes.hpp"
#include "fconv/symbols.hpp"

using namespace fconv;
using Catch::Approx;

namespace {

constexpr double pi = std::numbers::pi;

// Variation of a along a sorted partition, evaluated pointwise.
double partition_sum(const Symbol& a, const std::vector<double>& pts) {
    double s = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) s += std::abs(a(pts[i]) - a(pts[i - 1]));
    return s;
}

void check_norms(const Symbol& a, double sup, double var, double tol = 1e-12) {
    INFO(a.describe());
    const auto n = symbol_norms(a);
    CHECK(std::abs(n.sup_norm - sup) < tol);
    CHECK(std::abs(n.variation - var) < tol);
    CHECK(std::abs(n.v_norm - (sup + var)) < tol);
}

}  // namespace

TEST_CASE("indicator norms are exactly (1, 2, 3)") {
    Rng rng(1);
    for (int i = 0; i < 20; ++i) {
        const double c = uniform(rng, -50, 50);
        const double d = c + uniform(rng, 1e-3, 20);
        const auto n = symbol_norms(Symbol::indicator(c, d));
        CHECK(n.sup_norm == 1.0);
        CHECK(n.variation == 2.0);
        CHECK(n.v_norm == 3.0);
    }
}

TEST_CASE("closed-form norms") {
    check_norms(Symbol::constant(2.0), 2.0, 0.0);
    check_norms(Symbol::constant({0.0, -3.0}), 3.0, 0.0);
    check_norms(Symbol::arctan(), pi / 2, pi);
    check_norms(Symbol::rational_decay(), 1.0, 2.0);
    check_norms(Symbol::rational_decay(2.5), 1.0, 2.0);
    check_norms(Symbol::arctan() + Symbol::constant(1.0), 1 + pi / 2, pi);
    check_norms(Symbol::indicator(-1, 1) * Symbol::arctan(), pi / 4, pi);
    // Jumps of 1/101 at +-10, then monotone decay to 0 on each side.
    check_norms(tail_truncate(Symbol::rational_decay(), 10), 1.0 / 101, 4.0 / 101);
    check_norms(shift_symbol(Symbol::indicator(0, 1), 7.5), 1.0, 2.0);
    check_norms(Symbol::parse("sum(indicator(-1,1),indicator(0,2))"), 2.0, 4.0);
}

TEST_CASE("non-monotone tails converge") {
    // rational_decay minus its shift is not monotone on the tails.
    const auto a = Symbol::rational_decay() + Symbol::constant(-1.0) * shift_symbol(Symbol::rational_decay(), 3);
    const auto n = symbol_norms(a);
    std::vector<double> pts;
    for (double x = -200; x <= 200; x += 1e-3) pts.push_back(x);
    const double dense = partition_sum(a, pts);
    CHECK(n.variation >= dense - 1e-9);
    CHECK(n.variation <= dense + 1e-4);
}

TEST_CASE("unbounded variation is reported as non-convergence") {
    CHECK_THROWS_AS(symbol_norms(Symbol::modulation(1.0)), NoConvergence);
    try {
        symbol_norms(Symbol::modulation(1.0));
    } catch (const NoConvergence& e) {
        CHECK(e.lower() <= e.upper());
    }
    CHECK_THROWS_AS(tail_sup(Symbol::modulation(2.0), 5), Inconclusive);
    CHECK_THROWS_AS(symbol_norms(Symbol::indicator(-5, 5), 2.0, 16), InvalidArgument);
}

TEST_CASE("variation properties on random symbols") {
    Rng rng(77);
    const auto random_symbol = [&rng]() {
        switch (static_cast<int>(uniform(rng, 0, 4))) {
            case 0: {
                const double c = uniform(rng, -5, 5);
                return Symbol::indicator(c, c + uniform(rng, 0.1, 5));
            }
            case 1: return shift_symbol(Symbol::arctan(), uniform(rng, -3, 3));
            case 2: return shift_symbol(Symbol::rational_decay(uniform(rng, 0.5, 3)), uniform(rng, -3, 3));
            default: return tail_truncate(Symbol::rational_decay(), uniform(rng, 0.5, 4));
        }
    };
    for (int trial = 0; trial < 40; ++trial) {
        const auto a = random_symbol();
        const auto b = random_symbol();
        const auto na = symbol_norms(a);
        const auto nb = symbol_norms(b);
        const double h = uniform(rng, -10, 10);
        CHECK(symbol_norms(shift_symbol(a, h)).variation == Approx(na.variation).epsilon(1e-9));
        CHECK(symbol_norms(a + b).variation <= na.variation + nb.variation + 1e-9);
        CHECK(symbol_norms(a * b).variation <= na.sup_norm * nb.variation + nb.sup_norm * na.variation + 1e-9);

        std::vector<double> pts;
        for (int i = 0; i < 64; ++i) pts.push_back(uniform(rng, -30, 30));
        std::sort(pts.begin(), pts.end());
        CHECK(partition_sum(a, pts) <= na.variation + 1e-12);
        for (double x : pts) CHECK(std::abs(a(x)) <= na.sup_norm + 1e-15);
    }
}

TEST_CASE("one-sided limits and truncation") {
    const auto chi = Symbol::indicator(-1, 1);
    CHECK(chi(1.0) == cplx{1.0});
    CHECK(chi.limit(1.0, Side::right) == cplx{0.0});
    CHECK(chi.limit(1.0, Side::left) == cplx{1.0});
    CHECK(chi.breakpoints() == std::vector<double>{-1.0, 1.0});
    CHECK(chi.declares_decaying_tail());
    CHECK_FALSE(Symbol::arctan().declares_decaying_tail());

    const auto t = tail_truncate(Symbol::arctan(), 2);
    CHECK(t(2.0) == cplx{0.0});
    CHECK(t(-1.0) == cplx{0.0});
    CHECK(t(3.0) == cplx{std::atan(3.0)});
    CHECK(t.breakpoints() == std::vector<double>{-2.0, 2.0});
}

TEST_CASE("truncation and shift examples") {
    const auto one = tail_truncate(Symbol::constant(1.0), 2);
    CHECK(one(1.0) == cplx{0.0});
    CHECK(one(3.0) == cplx{1.0});
    const auto far = tail_truncate(Symbol::indicator(6, 7), 5);
    for (double x : {-6.0, 0.0, 5.5, 6.0, 6.5, 7.0, 7.5}) CHECK(far(x) == Symbol::indicator(6, 7)(x));
    CHECK(symbol_norms(tail_truncate(Symbol::rational_decay(), 10)).sup_norm == Approx(1.0 / 101).epsilon(1e-12));

    const auto moved = shift_symbol(Symbol::indicator(6, 7), 6);
    for (double x : {-0.5, 0.0, 0.5, 1.0, 1.5}) CHECK(moved(x) == Symbol::indicator(0, 1)(x));
    CHECK(moved.breakpoints() == std::vector<double>{0.0, 1.0});
    const auto same = shift_symbol(Symbol::arctan(), 0);
    for (double x : {-3.0, 0.1, 8.0}) CHECK(same(x) == Symbol::arctan()(x));
    CHECK(std::abs(symbol_norms(shift_symbol(Symbol::arctan(), 13.7)).v_norm - 1.5 * pi) < 1e-9);
}

TEST_CASE("variation is absolutely homogeneous") {
    Rng rng(12);
    for (int i = 0; i < 10; ++i) {
        const cplx alpha{uniform(rng, -3, 3), uniform(rng, -3, 3)};
        const auto a = shift_symbol(Symbol::arctan(), uniform(rng, -4, 4)) + Symbol::indicator(-1, 1);
        CHECK(symbol_norms(Symbol::constant(alpha) * a).variation ==
              Approx(std::abs(alpha) * symbol_norms(a).variation).epsilon(1e-9));
    }
}

TEST_CASE("tail suprema") {
    CHECK(tail_sup(Symbol::rational_decay(), 3) == Approx(0.1).epsilon(1e-12));
    CHECK(tail_sup(Symbol::constant(1.0), 7.5) == 1.0);
    double previous = tail_sup(Symbol::rational_decay() + Symbol::indicator(2, 4), 0.1);
    for (double N = 0.2; N < 40; N *= 1.3) {
        const double next = tail_sup(Symbol::rational_decay() + Symbol::indicator(2, 4), N);
        CHECK(next <= previous);
        previous = next;
    }
    CHECK(previous < 1e-3);
    for (double N : {0.5, 1.0, 4.0, 30.0}) CHECK(tail_sup(Symbol::rational_decay(), N) == Approx(1 / (1 + N * N)).epsilon(1e-12));
    CHECK(tail_sup(Symbol::indicator(-1, 1), 2.0) == 0.0);
    CHECK(tail_sup(Symbol::indicator(-1, 1), 0.5) == 1.0);
    CHECK(tail_sup(Symbol::indicator(-1, 1), 1.0) == 0.0);
    CHECK(tail_sup(Symbol::arctan(), 3.0) == Approx(pi / 2));
}

TEST_CASE("symbol descriptors") {
    const auto a = Symbol::parse("sum(indicator(-1,1),product(const(2),arctan))");
    for (double x : {-2.0, -1.0, 0.3, 1.0, 5.0})
        CHECK(a(x) == (x >= -1 && x <= 1 ? 1.0 : 0.0) + 2 * std::atan(x));
    CHECK(Symbol::parse(a.describe())(0.3) == a(0.3));
    CHECK(Symbol::parse("const(1,2)")(0.0) == cplx{1, 2});
    CHECK(Symbol::parse("shift(indicator(0,1),2)")(-1.5) == cplx{1.0});
    CHECK(Symbol::parse("truncate(rational_decay(2),1)")(0.5) == cplx{0.0});
    CHECK(std::abs(Symbol::parse("modulation(pi)")(1.0) + 1.0) < 1e-15);
    CHECK_THROWS_AS(Symbol::parse("indicator(2,1)"), ParseError);
    CHECK_THROWS_AS(Symbol::parse("wobble"), ParseError);
}

TEST_CASE("sampling on the frequency nodes") {
    const auto g = make_grid(pi, 8);  // frequency step 1, nodes -4..3
    const auto s = sample_symbol(Symbol::indicator(-1, 1), g);
    CHECK(s.domain() == Domain::frequency);
    for (std::size_t m = 0; m < 8; ++m) {
        const double x = g.frequency_node(m);
        CHECK(s[m].real() == (std::abs(x) <= 1.0 + 1e-12 ? 1.0 : 0.0));
    }
}
