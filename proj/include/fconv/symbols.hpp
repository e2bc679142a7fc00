#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fconv/descriptor.hpp"
#include "fconv/grid.hpp"

namespace fconv {

enum class Side { left, right };

/**
 * Bounded Fourier multiplier symbol given in closed form on the frequency
 * axis. Every symbol declares its breakpoints (jumps and kinks); between
 * consecutive breakpoints it is continuous. Text form:
 *
 *   const(k)           k
 *   indicator(c,d)     1 on the closed interval [c, d], else 0
 *   rational_decay(k)  (1 + x^2)^(-k), k defaults to 1
 *   arctan             arctan(x)
 *   modulation(tau)    e^{i tau x}; unbounded variation
 *   shift(a,h)         a(x + h)
 *   truncate(a,N)      a(x) for |x| > N, 0 on [-N, N]
 *   sum(a,b), product(a,b)
 */
class Symbol {
public:
    struct Node;

    static Symbol parse(std::string_view text);
    static Symbol from_node(const DescriptorNode& node);

    static Symbol constant(cplx k);
    static Symbol indicator(double c, double d);
    static Symbol rational_decay(double k = 1.0);
    static Symbol arctan();
    static Symbol modulation(double tau);

    cplx operator()(double x) const;
    cplx limit(double x, Side side) const;
    // Limit as x -> +inf (sign > 0) or -inf (sign < 0), when it exists.
    std::optional<cplx> limit_at_infinity(int sign) const;
    // Sorted, without duplicates.
    std::vector<double> breakpoints() const;
    // Real and imaginary parts are monotone beyond the outermost breakpoints.
    bool tail_monotone() const;
    // Both limits at infinity exist and vanish.
    bool declares_decaying_tail() const;
    std::string describe() const;

    friend Symbol operator+(const Symbol& a, const Symbol& b);
    friend Symbol operator*(const Symbol& a, const Symbol& b);

private:
    friend Symbol shift_symbol(const Symbol& a, double h);
    friend Symbol tail_truncate(const Symbol& a, double N);

    explicit Symbol(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct SymbolNorms {
    double sup_norm = 0.0;
    double variation = 0.0;
    double v_norm = 0.0;
};

/**
 * Sup norm and total variation V(a) over the whole line.
 *
 * The partition consists of the breakpoints and the window ends, every gap
 * subdivided `refinement` times. The subdivision doubles until the partition
 * sum grows by less than 1e-9. Jumps at breakpoints enter through one-sided
 * limits and the half-lines beyond the window through the limits at infinity.
 * Throws InvalidArgument if a breakpoint lies outside [-window, window], and
 * NoConvergence (with the last bracket) if the sum does not settle or a limit
 * at infinity is missing.
 */
SymbolNorms symbol_norms(const Symbol& a, double window, int refinement);
// Window just large enough to contain every breakpoint, refinement 16.
SymbolNorms symbol_norms(const Symbol& a);

// chi_{R \ [-N, N]} * a; breakpoints +-N added.
Symbol tail_truncate(const Symbol& a, double N);
// x -> a(x + h).
Symbol shift_symbol(const Symbol& a, double h);

// sup_{|x| > N} |a(x)|. Throws Inconclusive when the symbol has no limits at
// infinity.
double tail_sup(const Symbol& a, double N);

// a(x_k) on the frequency nodes.
GridFunction sample_symbol(const Symbol& a, const Grid& grid);

}  // namespace fconv
