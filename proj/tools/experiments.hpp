#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fconv::cli {

enum ExitCode : int { ok = 0, usage_error = 1, assertion_failed = 2 };

// Command-line flags; each one takes precedence over the config file.
struct Overrides {
    std::optional<std::filesystem::path> out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> grid_n;
    std::optional<double> grid_L;
};

struct RunResult {
    int exit_code = usage_error;
    std::string summary;  // one line, no trailing newline
    std::vector<std::filesystem::path> artifacts;
};

const std::vector<std::string>& commands();

/**
 * Runs one experiment described by an INI file. Sections:
 *
 *   [grid]   L, n
 *   [space]  p (real or inf), gamma
 *   [run]    seed, out
 *   [sweep]  symbol, band = lo,hi, shifts = h1,h2,...
 *   [mollify] f, kernel = gaussian|bump_spectrum, deltas, check_decreasing
 *   [stechkin] symbol, trials
 *   [maximal-check] f, trials
 *   [density] f, epsilon
 *   [axioms] trials, spaces = p:gamma;p:gamma
 *
 * Numbers accept "pi", "inf" and simple fractions such as 1/64. Unknown
 * sections or keys are config errors. Never throws.
 */
RunResult run_experiment(const std::string& command, const std::filesystem::path& config,
                         const Overrides& overrides = {});

}  // namespace fconv::cli
