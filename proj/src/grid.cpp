#include "fconv/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "fconv/error.hpp"

namespace fconv {

Grid::Grid(double half_width, std::size_t size) : half_width_(half_width), size_(size) {
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw InvalidArgument("grid half width must be a positive finite number");
    if (size < 8) throw InvalidArgument("grid size must be at least 8");
    if (size % 2 != 0) throw InvalidArgument("grid size must be even");
}

double Grid::freq_step() const noexcept { return std::numbers::pi / half_width_; }

double Grid::frequency_limit() const noexcept {
    return std::numbers::pi * static_cast<double>(size_) / (2.0 * half_width_);
}

std::vector<double> Grid::spatial_nodes() const {
    std::vector<double> out(size_);
    for (std::size_t j = 0; j < size_; ++j) out[j] = spatial_node(j);
    return out;
}

std::vector<double> Grid::frequency_nodes() const {
    std::vector<double> out(size_);
    for (std::size_t m = 0; m < size_; ++m) out[m] = frequency_node(m);
    return out;
}

Grid make_grid(double half_width, std::size_t size) { return Grid(half_width, size); }

// ---------------------------------------------------------------------------

GridFunction::GridFunction(Grid grid, std::vector<cplx> values, Domain domain)
    : grid_(grid), values_(std::move(values)), domain_(domain) {
    if (values_.size() != grid_.size())
        throw InvalidArgument("grid function has " + std::to_string(values_.size()) +
                              " samples, grid has " + std::to_string(grid_.size()));
    for (const auto& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw EvaluationError("grid function sample is not finite");
}

GridFunction GridFunction::zeros(const Grid& grid, Domain domain) {
    return GridFunction(grid, std::vector<cplx>(grid.size()), domain);
}

void require_compatible(const GridFunction& f, const GridFunction& g, std::string_view op) {
    if (f.grid() != g.grid()) throw InvalidArgument(std::string(op) + ": grid mismatch");
    if (f.domain() != g.domain()) throw InvalidArgument(std::string(op) + ": domain mismatch");
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
    require_compatible(*this, other, "operator+");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
    require_compatible(*this, other, "operator-");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
    return *this;
}

GridFunction& GridFunction::operator*=(cplx scale) {
    for (auto& v : values_) v *= scale;
    return *this;
}

GridFunction operator+(GridFunction lhs, const GridFunction& rhs) { return lhs += rhs; }
GridFunction operator-(GridFunction lhs, const GridFunction& rhs) { return lhs -= rhs; }
GridFunction operator*(cplx scale, GridFunction f) { return f *= scale; }

GridFunction pointwise_product(const GridFunction& f, const GridFunction& g) {
    require_compatible(f, g, "pointwise_product");
    std::vector<cplx> out(f.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = f[j] * g[j];
    return GridFunction(f.grid(), std::move(out), f.domain());
}

GridFunction abs(const GridFunction& f) {
    std::vector<cplx> out(f.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = std::abs(f[j]);
    return GridFunction(f.grid(), std::move(out), f.domain());
}

double max_abs(const GridFunction& f) {
    double m = 0.0;
    for (const auto& v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(const GridFunction& f, const GridFunction& g) {
    require_compatible(f, g, "max_abs_diff");
    double m = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) m = std::max(m, std::abs(f[j] - g[j]));
    return m;
}

// ---------------------------------------------------------------------------

double bump_value(double x) noexcept {
    if (std::abs(x) >= 1.0) return 0.0;
    return std::exp(1.0 / (x * x - 1.0));
}

struct FunctionExpr::Node {
    virtual ~Node() = default;
    virtual double eval(double t) const = 0;
    virtual std::string describe() const = 0;
};

namespace {

using NodePtr = std::shared_ptr<const FunctionExpr::Node>;

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

struct Constant final : FunctionExpr::Node {
    double c;
    explicit Constant(double c) : c(c) {}
    double eval(double) const override { return c; }
    std::string describe() const override { return "const(" + num(c) + ")"; }
};

struct Indicator final : FunctionExpr::Node {
    double lo, hi;
    bool closed;
    Indicator(double lo, double hi, bool closed) : lo(lo), hi(hi), closed(closed) {}
    double eval(double t) const override {
        return (t >= lo && (closed ? t <= hi : t < hi)) ? 1.0 : 0.0;
    }
    std::string describe() const override {
        return std::string(closed ? "closed_indicator(" : "indicator(") + num(lo) + "," +
               num(hi) + ")";
    }
};

struct Gaussian final : FunctionExpr::Node {
    double s;
    bool normalized;
    Gaussian(double s, bool normalized) : s(s), normalized(normalized) {}
    double eval(double t) const override {
        const double g = std::exp(-t * t / (2.0 * s * s));
        return normalized ? g / (s * std::sqrt(2.0 * std::numbers::pi)) : g;
    }
    std::string describe() const override {
        return std::string(normalized ? "normal(" : "gaussian(") + num(s) + ")";
    }
};

struct Bump final : FunctionExpr::Node {
    double eval(double t) const override { return bump_value(t); }
    std::string describe() const override { return "bump"; }
};

struct RationalDecay final : FunctionExpr::Node {
    double k;
    explicit RationalDecay(double k) : k(k) {}
    double eval(double t) const override { return std::pow(1.0 + t * t, -k); }
    std::string describe() const override { return "rational_decay(" + num(k) + ")"; }
};

struct PolyGauss final : FunctionExpr::Node {
    int k;
    explicit PolyGauss(int k) : k(k) {}
    double eval(double t) const override { return std::pow(t, k) * std::exp(-t * t); }
    std::string describe() const override { return "poly_gauss(" + std::to_string(k) + ")"; }
};

struct Translate final : FunctionExpr::Node {
    NodePtr child;
    double h;
    Translate(NodePtr c, double h) : child(std::move(c)), h(h) {}
    double eval(double t) const override { return child->eval(t - h); }
    std::string describe() const override {
        return "translate(" + child->describe() + "," + num(h) + ")";
    }
};

struct Dilate final : FunctionExpr::Node {
    NodePtr child;
    double s;
    Dilate(NodePtr c, double s) : child(std::move(c)), s(s) {}
    double eval(double t) const override { return child->eval(t / s); }
    std::string describe() const override {
        return "dilate(" + child->describe() + "," + num(s) + ")";
    }
};

struct Scale final : FunctionExpr::Node {
    NodePtr child;
    double c;
    Scale(NodePtr ch, double c) : child(std::move(ch)), c(c) {}
    double eval(double t) const override { return c * child->eval(t); }
    std::string describe() const override {
        return "scale(" + child->describe() + "," + num(c) + ")";
    }
};

struct Binary final : FunctionExpr::Node {
    NodePtr a, b;
    bool product;
    Binary(NodePtr a, NodePtr b, bool product) : a(std::move(a)), b(std::move(b)), product(product) {}
    double eval(double t) const override {
        return product ? a->eval(t) * b->eval(t) : a->eval(t) + b->eval(t);
    }
    std::string describe() const override {
        return std::string(product ? "product(" : "sum(") + a->describe() + "," + b->describe() +
               ")";
    }
};

}  // namespace

FunctionExpr FunctionExpr::constant(double c) { return FunctionExpr(std::make_shared<Constant>(c)); }

FunctionExpr FunctionExpr::indicator(double c, double d) {
    if (!(c < d)) throw InvalidArgument("indicator requires c < d");
    return FunctionExpr(std::make_shared<Indicator>(c, d, false));
}

FunctionExpr FunctionExpr::closed_indicator(double c, double d) {
    if (!(c <= d)) throw InvalidArgument("closed_indicator requires c <= d");
    return FunctionExpr(std::make_shared<Indicator>(c, d, true));
}

FunctionExpr FunctionExpr::gaussian(double s) {
    if (!(s > 0.0)) throw InvalidArgument("gaussian width must be positive");
    return FunctionExpr(std::make_shared<Gaussian>(s, false));
}

FunctionExpr FunctionExpr::normal(double s) {
    if (!(s > 0.0)) throw InvalidArgument("normal width must be positive");
    return FunctionExpr(std::make_shared<Gaussian>(s, true));
}

FunctionExpr FunctionExpr::bump() { return FunctionExpr(std::make_shared<Bump>()); }

FunctionExpr FunctionExpr::rational_decay(double k) {
    if (!(k > 0.0)) throw InvalidArgument("rational_decay exponent must be positive");
    return FunctionExpr(std::make_shared<RationalDecay>(k));
}

FunctionExpr FunctionExpr::poly_gauss(int k) {
    if (k < 0) throw InvalidArgument("poly_gauss degree must be non-negative");
    return FunctionExpr(std::make_shared<PolyGauss>(k));
}

FunctionExpr FunctionExpr::translate(double h) const {
    return FunctionExpr(std::make_shared<Translate>(node_, h));
}

FunctionExpr FunctionExpr::dilate(double s) const {
    if (!(s > 0.0)) throw InvalidArgument("dilation factor must be positive");
    return FunctionExpr(std::make_shared<Dilate>(node_, s));
}

FunctionExpr FunctionExpr::scale(double c) const {
    return FunctionExpr(std::make_shared<Scale>(node_, c));
}

FunctionExpr operator+(const FunctionExpr& a, const FunctionExpr& b) {
    return FunctionExpr(std::make_shared<Binary>(a.node_, b.node_, false));
}

FunctionExpr operator*(const FunctionExpr& a, const FunctionExpr& b) {
    return FunctionExpr(std::make_shared<Binary>(a.node_, b.node_, true));
}

double FunctionExpr::operator()(double t) const { return node_->eval(t); }

std::string FunctionExpr::describe() const { return node_->describe(); }

FunctionExpr FunctionExpr::from_node(const DescriptorNode& n) {
    const auto& a = n.args;
    if (n.name == "const") {
        n.expect_arity(1);
        return constant(a[0].number());
    }
    if (n.name == "indicator") {
        n.expect_arity(2);
        return indicator(a[0].number(), a[1].number());
    }
    if (n.name == "closed_indicator") {
        n.expect_arity(2);
        return closed_indicator(a[0].number(), a[1].number());
    }
    if (n.name == "gaussian") {
        n.expect_arity(0, 1);
        return gaussian(a.empty() ? 1.0 : a[0].number());
    }
    if (n.name == "normal") {
        n.expect_arity(0, 1);
        return normal(a.empty() ? 1.0 : a[0].number());
    }
    if (n.name == "bump") {
        n.expect_arity(0);
        return bump();
    }
    if (n.name == "rational_decay") {
        n.expect_arity(0, 1);
        return rational_decay(a.empty() ? 1.0 : a[0].number());
    }
    if (n.name == "poly_gauss") {
        n.expect_arity(1);
        const double k = a[0].number();
        if (k != std::floor(k)) throw ParseError("poly_gauss degree must be an integer");
        return poly_gauss(static_cast<int>(k));
    }
    if (n.name == "translate") {
        n.expect_arity(2);
        return from_node(a[0].node()).translate(a[1].number());
    }
    if (n.name == "dilate") {
        n.expect_arity(2);
        return from_node(a[0].node()).dilate(a[1].number());
    }
    if (n.name == "scale") {
        n.expect_arity(2);
        return from_node(a[0].node()).scale(a[1].number());
    }
    if (n.name == "sum") {
        n.expect_arity(2);
        return from_node(a[0].node()) + from_node(a[1].node());
    }
    if (n.name == "product") {
        n.expect_arity(2);
        return from_node(a[0].node()) * from_node(a[1].node());
    }
    throw ParseError("unknown function descriptor '" + n.name + "'");
}

FunctionExpr FunctionExpr::parse(std::string_view text) {
    const auto node = parse_descriptor(text);
    try {
        return from_node(node);
    } catch (const InvalidArgument& e) {
        throw ParseError("invalid descriptor '" + std::string(text) + "': " + e.what());
    }
}

// ---------------------------------------------------------------------------

namespace {

GridFunction sample_on(const FunctionExpr& expr, const Grid& grid, Domain domain) {
    std::vector<cplx> values(grid.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
        const double t = domain == Domain::spatial ? grid.spatial_node(j) : grid.frequency_node(j);
        const double v = expr(t);
        if (!std::isfinite(v))
            throw EvaluationError("'" + expr.describe() + "' is not finite at " + num(t));
        values[j] = v;
    }
    return GridFunction(grid, std::move(values), domain);
}

}  // namespace

GridFunction sample(const FunctionExpr& expr, const Grid& grid) {
    return sample_on(expr, grid, Domain::spatial);
}

GridFunction sample_frequency(const FunctionExpr& expr, const Grid& grid) {
    return sample_on(expr, grid, Domain::frequency);
}

cplx quadrature(const GridFunction& f) {
    const double step =
        f.domain() == Domain::spatial ? f.grid().spatial_step() : f.grid().freq_step();
    cplx sum = 0.0;
    for (const auto& v : f.values()) sum += v;
    return step * sum - 0.5 * step * f[0];
}

void write_csv(std::ostream& os, const GridFunction& f) {
    os << "index,t,re,im\n";
    char line[128];
    for (std::size_t j = 0; j < f.size(); ++j) {
        std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g\n", j, f.node(j), f[j].real(),
                      f[j].imag());
        os << line;
    }
}

}  // namespace fconv
