#include <CLI11.hpp>

#include <iostream>

#include "experiments.hpp"

int main(int argc, char** argv) {
    namespace cli = fconv::cli;

    CLI::App app{"Fourier convolution operator experiments"};
    std::string command;
    std::string config;
    cli::Overrides overrides;
    std::string out;
    std::uint64_t seed = 0;
    std::size_t grid_n = 0;
    double grid_L = 0.0;

    std::string names;
    for (const auto& c : cli::commands()) names += (names.empty() ? "" : "|") + c;
    app.add_option("command", command, names)->required();
    app.add_option("--config", config, "INI experiment description")->required();
    auto* out_opt = app.add_option("--out", out, "output directory");
    auto* seed_opt = app.add_option("--seed", seed, "random seed");
    auto* n_opt = app.add_option("--grid-n", grid_n, "number of grid nodes");
    auto* L_opt = app.add_option("--grid-L", grid_L, "grid half-width");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::usage_error;
    }
    if (*out_opt) overrides.out = out;
    if (*seed_opt) overrides.seed = seed;
    if (*n_opt) overrides.grid_n = grid_n;
    if (*L_opt) overrides.grid_L = grid_L;

    const auto result = cli::run_experiment(command, config, overrides);
    (result.exit_code == cli::usage_error ? std::cerr : std::cout) << result.summary << "\n";
    return result.exit_code;
}
