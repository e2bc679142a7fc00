#include "fconv/maximal.hpp"

#include <algorithm>
#include <cmath>

#include "fconv/error.hpp"
#include "fconv/probes.hpp"

namespace fconv {
namespace {

// prefix[i] = |f_0| + ... + |f_{i-1}|, so the run a..b has mean
// (prefix[b+1] - prefix[a]) / (b + 1 - a): the slope between the points
// (a, prefix[a]) and (b+1, prefix[b+1]).
std::vector<double> prefix_sums(const GridFunction& f) {
    std::vector<double> prefix(f.size() + 1, 0.0);
    for (std::size_t j = 0; j < f.size(); ++j) prefix[j + 1] = prefix[j] + std::abs(f[j]);
    return prefix;
}

std::vector<double> maximal_oracle(const std::vector<double>& prefix) {
    const std::size_t n = prefix.size() - 1;
    std::vector<double> best(n, 0.0);
    std::vector<double> suffix_max(n);
    for (std::size_t a = 0; a < n; ++a) {
        // suffix_max[j] = max over b >= j of mean(a..b).
        double running = 0.0;
        for (std::size_t b = n; b-- > a;) {
            const double mean = (prefix[b + 1] - prefix[a]) / static_cast<double>(b + 1 - a);
            running = std::max(running, mean);
            suffix_max[b] = running;
        }
        for (std::size_t j = a; j < n; ++j) best[j] = std::max(best[j], suffix_max[j]);
    }
    return best;
}

class FastMaximal {
public:
    explicit FastMaximal(const std::vector<double>& prefix)
        : prefix_(prefix), n_(prefix.size() - 1), best_(n_) {
        for (std::size_t j = 0; j < n_; ++j) best_[j] = prefix_[j + 1] - prefix_[j];
    }

    std::vector<double> run() {
        if (n_ > 1) solve(0, n_ - 1);
        return best_;
    }

private:
    double slope(std::size_t a, std::size_t c) const {
        return (prefix_[c] - prefix_[a]) / static_cast<double>(c - a);
    }

    // Orientation of prefix points i < j < k: negative when j lies below the
    // chord from i to k, zero when collinear.
    double orientation(std::size_t i, std::size_t j, std::size_t k) const {
        return (prefix_[j] - prefix_[i]) * static_cast<double>(k - i) -
               (prefix_[k] - prefix_[i]) * static_cast<double>(j - i);
    }

    // Max over hull points h of slope(q, h) for q left of the chain (upper
    // hull) or of slope(h, q) for q right of the chain (lower hull). The
    // slope along a convex chain is unimodal in the hull index.
    double tangent_right(std::size_t q, const std::vector<std::size_t>& upper) const {
        std::size_t lo = 0, hi = upper.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (slope(q, upper[mid]) < slope(q, upper[mid + 1]))
                lo = mid + 1;
            else
                hi = mid;
        }
        return slope(q, upper[lo]);
    }

    double tangent_left(std::size_t q, const std::vector<std::size_t>& lower) const {
        std::size_t lo = 0, hi = lower.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (slope(lower[mid], q) < slope(lower[mid + 1], q))
                lo = mid + 1;
            else
                hi = mid;
        }
        return slope(lower[lo], q);
    }

    // Runs a..b with lo <= a <= mid < b <= hi, in prefix coordinates the
    // pairs (a, c) with a in [lo, mid] and c = b + 1 in [mid + 2, hi + 1].
    void solve(std::size_t lo, std::size_t hi) {
        if (lo >= hi) return;
        const std::size_t mid = lo + (hi - lo) / 2;

        // Hulls are strictly convex (collinear points dropped), which keeps the
        // tangent searches free of off-peak plateaus.
        std::vector<std::size_t> upper;
        for (std::size_t c = mid + 2; c <= hi + 1; ++c) {
            while (upper.size() >= 2 &&
                   orientation(upper[upper.size() - 2], upper.back(), c) <= 0.0)
                upper.pop_back();
            upper.push_back(c);
        }
        std::vector<std::size_t> lower;
        for (std::size_t a = lo; a <= mid; ++a) {
            while (lower.size() >= 2 &&
                   orientation(lower[lower.size() - 2], lower.back(), a) >= 0.0)
                lower.pop_back();
            lower.push_back(a);
        }

        // Left half: node j is covered by every crossing run with a <= j.
        double running = 0.0;
        for (std::size_t a = lo; a <= mid; ++a) {
            running = std::max(running, tangent_right(a, upper));
            best_[a] = std::max(best_[a], running);
        }
        // Right half: node j is covered by every crossing run with b >= j.
        running = 0.0;
        for (std::size_t b = hi + 1; b-- > mid + 1;) {
            running = std::max(running, tangent_left(b + 1, lower));
            best_[b] = std::max(best_[b], running);
        }

        solve(lo, mid);
        solve(mid + 1, hi);
    }

    const std::vector<double>& prefix_;
    std::size_t n_;
    std::vector<double> best_;
};

}  // namespace

GridFunction maximal_function(const GridFunction& f, MaximalMode mode) {
    const auto prefix = prefix_sums(f);
    const auto best = mode == MaximalMode::oracle ? maximal_oracle(prefix) : FastMaximal(prefix).run();
    return GridFunction(f.grid(), std::vector<cplx>(best.begin(), best.end()), f.domain());
}

double maximal_norm_estimate(const SpaceNorm& space, int trials, std::uint64_t seed) {
    return maximal_norm_estimate(space, trials, seed, make_grid(8.0, 256));
}

double maximal_norm_estimate(const SpaceNorm& space, int trials, std::uint64_t seed,
                             const Grid& grid) {
    if (space.exponent() == 1.0 || space.is_infinite())
        throw Unsupported("maximal operator norm is only estimated for 1 < p < inf");
    if (trials < 1) throw InvalidArgument("maximal_norm_estimate needs at least one trial");
    Rng rng(seed);
    double estimate = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        const auto f = random_probe(grid, rng);
        const double nf = space_norm(space, f);
        if (nf == 0.0) continue;
        estimate = std::max(estimate, space_norm(space, maximal_function(f)) / nf);
    }
    return estimate;
}

}  // namespace fconv
