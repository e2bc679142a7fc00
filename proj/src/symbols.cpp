#include "fconv/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fconv/error.hpp"

namespace fconv {

struct Symbol::Node {
    virtual ~Node() = default;
    virtual cplx eval(double x) const = 0;
    // Nodes continuous everywhere need not override.
    virtual cplx limit(double x, Side) const { return eval(x); }
    virtual std::optional<cplx> at_infinity(int sign) const = 0;
    virtual void collect_breakpoints(std::vector<double>& out) const = 0;
    virtual bool tail_monotone() const { return true; }
    virtual std::string describe() const = 0;
};

namespace {

using NodePtr = std::shared_ptr<const Symbol::Node>;

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

struct Constant final : Symbol::Node {
    cplx k;
    explicit Constant(cplx k) : k(k) {}
    cplx eval(double) const override { return k; }
    std::optional<cplx> at_infinity(int) const override { return k; }
    void collect_breakpoints(std::vector<double>&) const override {}
    std::string describe() const override {
        if (k.imag() == 0.0) return "const(" + num(k.real()) + ")";
        return "const(" + num(k.real()) + "+" + num(k.imag()) + "i)";
    }
};

struct Indicator final : Symbol::Node {
    double c, d;
    Indicator(double c, double d) : c(c), d(d) {}
    cplx eval(double x) const override { return (x >= c && x <= d) ? 1.0 : 0.0; }
    cplx limit(double x, Side side) const override {
        if (side == Side::right) return (x >= c && x < d) ? 1.0 : 0.0;
        return (x > c && x <= d) ? 1.0 : 0.0;
    }
    std::optional<cplx> at_infinity(int) const override { return cplx{}; }
    void collect_breakpoints(std::vector<double>& out) const override {
        out.push_back(c);
        out.push_back(d);
    }
    std::string describe() const override { return "indicator(" + num(c) + "," + num(d) + ")"; }
};

struct RationalDecay final : Symbol::Node {
    double k;
    explicit RationalDecay(double k) : k(k) {}
    cplx eval(double x) const override {
        return k == 1.0 ? 1.0 / (1.0 + x * x) : std::pow(1.0 + x * x, -k);
    }
    std::optional<cplx> at_infinity(int) const override { return cplx{}; }
    // Kink of monotonicity at the maximum.
    void collect_breakpoints(std::vector<double>& out) const override { out.push_back(0.0); }
    std::string describe() const override { return "rational_decay(" + num(k) + ")"; }
};

struct Arctan final : Symbol::Node {
    cplx eval(double x) const override { return std::atan(x); }
    std::optional<cplx> at_infinity(int sign) const override {
        return sign > 0 ? std::numbers::pi / 2 : -std::numbers::pi / 2;
    }
    void collect_breakpoints(std::vector<double>&) const override {}
    std::string describe() const override { return "arctan"; }
};

struct Modulation final : Symbol::Node {
    double tau;
    explicit Modulation(double tau) : tau(tau) {}
    cplx eval(double x) const override { return std::polar(1.0, tau * x); }
    std::optional<cplx> at_infinity(int) const override {
        if (tau == 0.0) return cplx{1.0};
        return std::nullopt;
    }
    void collect_breakpoints(std::vector<double>&) const override {}
    bool tail_monotone() const override { return tau == 0.0; }
    std::string describe() const override { return "modulation(" + num(tau) + ")"; }
};

struct Shift final : Symbol::Node {
    NodePtr child;
    double h;
    // Child breakpoints b and their images b - h, so that x + h lands on b
    // exactly when x is an advertised breakpoint.
    std::vector<double> inner, outer;
    Shift(NodePtr c, double h) : child(std::move(c)), h(h) {
        child->collect_breakpoints(inner);
        std::sort(inner.begin(), inner.end());
        inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
        for (double b : inner) outer.push_back(b - h);
    }
    double pull_back(double x) const {
        const auto it = std::lower_bound(outer.begin(), outer.end(), x);
        if (it != outer.end() && *it == x) return inner[static_cast<std::size_t>(it - outer.begin())];
        return x + h;
    }
    cplx eval(double x) const override { return child->eval(pull_back(x)); }
    cplx limit(double x, Side side) const override { return child->limit(pull_back(x), side); }
    std::optional<cplx> at_infinity(int sign) const override { return child->at_infinity(sign); }
    void collect_breakpoints(std::vector<double>& out) const override {
        out.insert(out.end(), outer.begin(), outer.end());
    }
    bool tail_monotone() const override { return child->tail_monotone(); }
    std::string describe() const override {
        return "shift(" + child->describe() + "," + num(h) + ")";
    }
};

struct Truncate final : Symbol::Node {
    NodePtr child;
    double N;
    Truncate(NodePtr c, double N) : child(std::move(c)), N(N) {}
    cplx eval(double x) const override { return std::abs(x) > N ? child->eval(x) : cplx{}; }
    cplx limit(double x, Side side) const override {
        const bool outside = side == Side::right ? (x >= N || x < -N) : (x > N || x <= -N);
        return outside ? child->limit(x, side) : cplx{};
    }
    std::optional<cplx> at_infinity(int sign) const override { return child->at_infinity(sign); }
    void collect_breakpoints(std::vector<double>& out) const override {
        child->collect_breakpoints(out);
        out.push_back(-N);
        out.push_back(N);
    }
    bool tail_monotone() const override { return child->tail_monotone(); }
    std::string describe() const override {
        return "truncate(" + child->describe() + "," + num(N) + ")";
    }
};

struct Binary final : Symbol::Node {
    NodePtr a, b;
    bool product;
    Binary(NodePtr a, NodePtr b, bool product) : a(std::move(a)), b(std::move(b)), product(product) {}
    cplx combine(cplx u, cplx v) const { return product ? u * v : u + v; }
    cplx eval(double x) const override { return combine(a->eval(x), b->eval(x)); }
    cplx limit(double x, Side side) const override {
        return combine(a->limit(x, side), b->limit(x, side));
    }
    std::optional<cplx> at_infinity(int sign) const override {
        const auto u = a->at_infinity(sign);
        const auto v = b->at_infinity(sign);
        if (!u || !v) return std::nullopt;
        return combine(*u, *v);
    }
    void collect_breakpoints(std::vector<double>& out) const override {
        a->collect_breakpoints(out);
        b->collect_breakpoints(out);
    }
    // Sums and products of monotone tails need not be monotone.
    bool tail_monotone() const override {
        if (dynamic_cast<const Constant*>(a.get()) != nullptr) return b->tail_monotone();
        if (dynamic_cast<const Constant*>(b.get()) != nullptr) return a->tail_monotone();
        return false;
    }
    std::string describe() const override {
        return std::string(product ? "product(" : "sum(") + a->describe() + "," + b->describe() +
               ")";
    }
};

}  // namespace

Symbol Symbol::constant(cplx k) { return Symbol(std::make_shared<Constant>(k)); }

Symbol Symbol::indicator(double c, double d) {
    if (!(c <= d) || !std::isfinite(c) || !std::isfinite(d))
        throw InvalidArgument("indicator symbol requires finite c <= d");
    return Symbol(std::make_shared<Indicator>(c, d));
}

Symbol Symbol::rational_decay(double k) {
    if (!(k > 0.0)) throw InvalidArgument("rational_decay exponent must be positive");
    return Symbol(std::make_shared<RationalDecay>(k));
}

Symbol Symbol::arctan() { return Symbol(std::make_shared<Arctan>()); }

Symbol Symbol::modulation(double tau) { return Symbol(std::make_shared<Modulation>(tau)); }

Symbol operator+(const Symbol& a, const Symbol& b) {
    return Symbol(std::make_shared<Binary>(a.node_, b.node_, false));
}

Symbol operator*(const Symbol& a, const Symbol& b) {
    return Symbol(std::make_shared<Binary>(a.node_, b.node_, true));
}

Symbol shift_symbol(const Symbol& a, double h) {
    return Symbol(std::make_shared<Shift>(a.node_, h));
}

Symbol tail_truncate(const Symbol& a, double N) {
    if (!(N > 0.0) || !std::isfinite(N)) throw InvalidArgument("truncation level must be positive");
    return Symbol(std::make_shared<Truncate>(a.node_, N));
}

cplx Symbol::operator()(double x) const { return node_->eval(x); }
cplx Symbol::limit(double x, Side side) const { return node_->limit(x, side); }
std::optional<cplx> Symbol::limit_at_infinity(int sign) const { return node_->at_infinity(sign); }
bool Symbol::tail_monotone() const { return node_->tail_monotone(); }
std::string Symbol::describe() const { return node_->describe(); }

std::vector<double> Symbol::breakpoints() const {
    std::vector<double> out;
    node_->collect_breakpoints(out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool Symbol::declares_decaying_tail() const {
    const auto plus = limit_at_infinity(1);
    const auto minus = limit_at_infinity(-1);
    return plus && minus && *plus == cplx{} && *minus == cplx{};
}

Symbol Symbol::from_node(const DescriptorNode& n) {
    const auto& a = n.args;
    if (n.name == "const") {
        n.expect_arity(1, 2);
        return constant({a[0].number(), a.size() > 1 ? a[1].number() : 0.0});
    }
    if (n.name == "indicator") {
        n.expect_arity(2);
        return indicator(a[0].number(), a[1].number());
    }
    if (n.name == "rational_decay") {
        n.expect_arity(0, 1);
        return rational_decay(a.empty() ? 1.0 : a[0].number());
    }
    if (n.name == "arctan") {
        n.expect_arity(0);
        return arctan();
    }
    if (n.name == "modulation") {
        n.expect_arity(1);
        return modulation(a[0].number());
    }
    if (n.name == "shift") {
        n.expect_arity(2);
        return shift_symbol(from_node(a[0].node()), a[1].number());
    }
    if (n.name == "truncate") {
        n.expect_arity(2);
        return tail_truncate(from_node(a[0].node()), a[1].number());
    }
    if (n.name == "sum") {
        n.expect_arity(2);
        return from_node(a[0].node()) + from_node(a[1].node());
    }
    if (n.name == "product") {
        n.expect_arity(2);
        return from_node(a[0].node()) * from_node(a[1].node());
    }
    throw ParseError("unknown symbol descriptor '" + n.name + "'");
}

Symbol Symbol::parse(std::string_view text) {
    const auto node = parse_descriptor(text);
    try {
        return from_node(node);
    } catch (const InvalidArgument& e) {
        throw ParseError("invalid descriptor '" + std::string(text) + "': " + e.what());
    }
}

// ---------------------------------------------------------------------------

namespace {

constexpr int kMaxRefinement = 1 << 20;
// Non-monotone tails are followed geometrically out to window * 2^kTailOctaves.
constexpr int kTailOctaves = 24;

std::vector<double> partition_knots(const Symbol& a, double window) {
    std::vector<double> knots = a.breakpoints();
    knots.push_back(-window);
    knots.push_back(window);
    if (!a.tail_monotone()) {
        double r = window;
        for (int i = 0; i < kTailOctaves; ++i) {
            r *= 2.0;
            knots.push_back(r);
            knots.push_back(-r);
        }
    }
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    return knots;
}

// Golden-section search for an extremum of one component of a on [lo, hi].
double refine_extremum(const Symbol& a, double lo, double hi, bool imaginary, bool maximum) {
    const auto f = [&](double x) {
        const cplx v = a(x);
        const double c = imaginary ? v.imag() : v.real();
        return maximum ? c : -c;
    };
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    // Stopping well short of rounding level keeps the probes clear of the
    // knots, where shifted breakpoints are only resolved to an ulp.
    const double resolution = 1e-9 * (hi - lo);
    while (hi - lo > resolution) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    return f1 < f2 ? x2 : x1;
}

// r - 1 equispaced interior points of (u, v) plus the located position of
// every extremum of the real and imaginary parts found by sampling, sorted.
std::vector<double> segment_points(const Symbol& a, double u, double v, int r) {
    std::vector<double> xs;
    std::vector<cplx> ys;
    xs.reserve(static_cast<std::size_t>(r) + 1);
    xs.push_back(u);
    ys.push_back(a.limit(u, Side::right));
    for (int s = 1; s < r; ++s) {
        xs.push_back(u + (v - u) * s / r);
        ys.push_back(a(xs.back()));
    }
    xs.push_back(v);
    ys.push_back(a.limit(v, Side::left));

    std::vector<double> extra;
    for (std::size_t s = 1; s + 1 < xs.size(); ++s) {
        for (bool imaginary : {false, true}) {
            const auto c = [&](std::size_t k) { return imaginary ? ys[k].imag() : ys[k].real(); };
            const double d0 = c(s) - c(s - 1), d1 = c(s + 1) - c(s);
            if (d0 > 0 && d1 <= 0)
                extra.push_back(refine_extremum(a, xs[s - 1], xs[s + 1], imaginary, true));
            else if (d0 < 0 && d1 >= 0)
                extra.push_back(refine_extremum(a, xs[s - 1], xs[s + 1], imaginary, false));
        }
    }
    // A knot can hide an extremum of the cell next to it.
    for (bool imaginary : {false, true})
        for (bool maximum : {false, true}) {
            extra.push_back(refine_extremum(a, xs[0], xs[1], imaginary, maximum));
            extra.push_back(refine_extremum(a, xs[xs.size() - 2], xs.back(), imaginary, maximum));
        }
    std::vector<double> pts(xs.begin() + 1, xs.end() - 1);
    for (double x : extra)
        if (x > u && x < v) pts.push_back(x);
    std::sort(pts.begin(), pts.end());
    return pts;
}

struct PartitionSum {
    double variation = 0.0;
    double sup = 0.0;
};

PartitionSum partition_sum(const Symbol& a, const std::vector<double>& knots, int r, cplx minus_inf,
                           cplx plus_inf) {
    PartitionSum out;
    const auto visit = [&](cplx v) { out.sup = std::max(out.sup, std::abs(v)); };

    visit(minus_inf);
    visit(plus_inf);
    out.variation += std::abs(a.limit(knots.front(), Side::left) - minus_inf);
    out.variation += std::abs(plus_inf - a.limit(knots.back(), Side::right));

    for (std::size_t i = 0; i < knots.size(); ++i) {
        const double b = knots[i];
        const cplx left = a.limit(b, Side::left);
        const cplx mid = a(b);
        const cplx right = a.limit(b, Side::right);
        visit(left);
        visit(mid);
        visit(right);
        out.variation += std::abs(mid - left) + std::abs(right - mid);

        if (i + 1 == knots.size()) break;
        const auto pts = segment_points(a, b, knots[i + 1], r);
        cplx previous = right;
        for (double x : pts) {
            const cplx value = a(x);
            visit(value);
            out.variation += std::abs(value - previous);
            previous = value;
        }
        out.variation += std::abs(a.limit(knots[i + 1], Side::left) - previous);
    }
    return out;
}

}  // namespace

SymbolNorms symbol_norms(const Symbol& a, double window, int refinement) {
    if (!(window > 0.0)) throw InvalidArgument("symbol_norms window must be positive");
    if (refinement < 2) throw InvalidArgument("symbol_norms refinement must be at least 2");
    const auto bps = a.breakpoints();
    if (!bps.empty() && (bps.front() < -window || bps.back() > window))
        throw InvalidArgument("symbol_norms window does not contain all breakpoints of " +
                              a.describe());

    const auto knots = partition_knots(a, window);
    const auto plus = a.limit_at_infinity(1);
    const auto minus = a.limit_at_infinity(-1);
    if (!plus || !minus) {
        const auto inner = partition_sum(a, knots, refinement, a(knots.front()), a(knots.back()));
        throw NoConvergence("total variation of " + a.describe() +
                                " is unbounded: no limit at infinity",
                            inner.variation, std::numeric_limits<double>::infinity());
    }

    auto current = partition_sum(a, knots, refinement, *minus, *plus);
    for (int r = refinement;;) {
        if (r > kMaxRefinement / 2)
            throw NoConvergence("total variation of " + a.describe() + " did not converge",
                                current.variation, std::numeric_limits<double>::infinity());
        r *= 2;
        const auto next = partition_sum(a, knots, r, *minus, *plus);
        const double increase = next.variation - current.variation;
        current = PartitionSum{std::max(current.variation, next.variation),
                               std::max(current.sup, next.sup)};
        if (increase < 1e-9) break;
    }
    return SymbolNorms{current.sup, current.variation, current.sup + current.variation};
}

SymbolNorms symbol_norms(const Symbol& a) {
    const auto bps = a.breakpoints();
    double window = 1.0;
    for (double b : bps) window = std::max(window, std::abs(b));
    return symbol_norms(a, window, 16);
}

double tail_sup(const Symbol& a, double N) {
    if (!(N > 0.0)) throw InvalidArgument("tail_sup level must be positive");
    const auto plus = a.limit_at_infinity(1);
    const auto minus = a.limit_at_infinity(-1);
    if (!plus || !minus)
        throw Inconclusive("tail of " + a.describe() +
                           " has no declared limit at infinity; sampling cannot bound it");

    double window = 2.0 * N + 1.0;
    for (double b : a.breakpoints()) window = std::max(window, 2.0 * std::abs(b) + 1.0);
    const auto knots = partition_knots(a, window);

    // Piecewise monotone between knots, so the extremes of |a| on each
    // piece sit at its ends; the interior samples guard products and sums.
    constexpr int kSamples = 256;
    double sup = std::max(std::abs(*plus), std::abs(*minus));
    sup = std::max({sup, std::abs(a.limit(N, Side::right)), std::abs(a.limit(-N, Side::left))});
    const auto segment = [&](double u, double v) {
        for (int s = 1; s < kSamples; ++s) sup = std::max(sup, std::abs(a(u + (v - u) * s / kSamples)));
        sup = std::max({sup, std::abs(a.limit(u, Side::right)), std::abs(a.limit(v, Side::left))});
    };
    double previous_right = N;
    double previous_left = -N;
    for (double b : knots) {
        if (b > N) {
            segment(previous_right, b);
            sup = std::max({sup, std::abs(a(b)), std::abs(a.limit(b, Side::right))});
            previous_right = b;
        }
    }
    for (auto it = knots.rbegin(); it != knots.rend(); ++it) {
        const double b = *it;
        if (b < -N) {
            segment(b, previous_left);
            sup = std::max({sup, std::abs(a(b)), std::abs(a.limit(b, Side::left))});
            previous_left = b;
        }
    }
    return sup;
}

GridFunction sample_symbol(const Symbol& a, const Grid& grid) {
    std::vector<cplx> values(grid.size());
    for (std::size_t m = 0; m < values.size(); ++m) {
        values[m] = a(grid.frequency_node(m));
        if (!std::isfinite(values[m].real()) || !std::isfinite(values[m].imag()))
            throw EvaluationError("symbol " + a.describe() + " is not finite at a frequency node");
    }
    return GridFunction(grid, std::move(values), Domain::frequency);
}

}  // namespace fconv
