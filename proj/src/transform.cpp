#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "fconv/error.hpp"
#include "fconv/grid.hpp"

namespace fconv {
namespace {

struct FftwFree {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

FftwBuffer allocate(std::size_t n) {
    auto* p = fftw_alloc_complex(n);
    if (!p) throw std::bad_alloc();
    return FftwBuffer(p);
}

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (size, sign) and kept for the
// process lifetime.
class PlanCache {
public:
    fftw_plan get(std::size_t n, int sign) {
        std::lock_guard lock(mutex_);
        const auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        auto in = allocate(n);
        auto out = allocate(n);
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), sign,
                                          FFTW_ESTIMATE);
        if (!plan) throw std::runtime_error("FFTW failed to create a plan");
        plans_.emplace(key, plan);
        return plan;
    }

    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

// Unnormalized sum_j in[j] exp(sign * 2 pi i j q / n).
std::vector<cplx> raw_dft_fast(const std::vector<cplx>& in, int sign) {
    const std::size_t n = in.size();
    auto a = allocate(n);
    auto b = allocate(n);
    for (std::size_t j = 0; j < n; ++j) {
        a[j][0] = in[j].real();
        a[j][1] = in[j].imag();
    }
    fftw_execute_dft(plan_cache().get(n, sign), a.get(), b.get());
    std::vector<cplx> out(n);
    for (std::size_t q = 0; q < n; ++q) out[q] = {b[q][0], b[q][1]};
    return out;
}

std::vector<cplx> raw_dft_direct(const std::vector<cplx>& in, int sign) {
    const std::size_t n = in.size();
    std::vector<cplx> twiddle(n);
    for (std::size_t r = 0; r < n; ++r) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
        twiddle[r] = {std::cos(angle), sign * std::sin(angle)};
    }
    std::vector<cplx> out(n);
    for (std::size_t q = 0; q < n; ++q) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += in[j] * twiddle[(j * q) % n];
        out[q] = acc;
    }
    return out;
}

}  // namespace

GridFunction dft_pair(const GridFunction& f, Direction direction, TransformPath path) {
    const Grid& grid = f.grid();
    const std::size_t n = grid.size();
    const std::size_t half = n / 2;
    const auto raw = path == TransformPath::fast ? raw_dft_fast : raw_dft_direct;

    // t_j x_k = -pi k + 2 pi j k / n, so e^{i t_j x_k} = (-1)^k e^{2 pi i j k / n}.
    // Storage index m carries k = m - n/2; the DFT bin of k is k mod n.
    const auto bin = [&](std::size_t m) { return (m + half) % n; };
    const auto parity = [&](std::size_t m) { return (grid.wavenumber(m) % 2 == 0) ? 1.0 : -1.0; };

    if (direction == Direction::forward) {
        if (f.domain() != Domain::spatial)
            throw InvalidArgument("forward transform expects spatial samples");
        const auto y = raw(std::vector<cplx>(f.values().begin(), f.values().end()), FFTW_BACKWARD);
        std::vector<cplx> out(n);
        const double dx = grid.spatial_step();
        for (std::size_t m = 0; m < n; ++m) out[m] = dx * parity(m) * y[bin(m)];
        return GridFunction(grid, std::move(out), Domain::frequency);
    }

    if (f.domain() != Domain::frequency)
        throw InvalidArgument("inverse transform expects frequency samples");
    std::vector<cplx> z(n);
    for (std::size_t m = 0; m < n; ++m) z[bin(m)] = parity(m) * f[m];
    auto y = raw(z, FFTW_FORWARD);
    const double scale = grid.freq_step() / (2.0 * std::numbers::pi);
    for (auto& v : y) v *= scale;
    return GridFunction(grid, std::move(y), Domain::spatial);
}

}  // namespace fconv
