#include "experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "fconv/error.hpp"
#include "fconv/fourier.hpp"
#include "fconv/limitops.hpp"
#include "fconv/maximal.hpp"
#include "fconv/probes.hpp"
#include "fconv/spaces.hpp"
#include "fconv/symbols.hpp"

namespace fconv::cli {

namespace {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;
using json = nlohmann::json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DescriptorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::map<std::string, std::set<std::string>>& allowed_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"grid", {"L", "n"}},
        {"space", {"p", "gamma"}},
        {"run", {"seed", "out"}},
        {"sweep", {"symbol", "band", "shifts"}},
        {"mollify", {"f", "kernel", "deltas", "check_decreasing"}},
        {"stechkin", {"symbol", "trials"}},
        {"maximal-check", {"f", "trials"}},
        {"density", {"f", "epsilon"}},
        {"axioms", {"trials", "spaces"}},
    };
    return keys;
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

double parse_real(const std::string& key, const std::string& raw) {
    const std::string text = trim(raw);
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "pi") return std::numbers::pi;
    if (text == "-pi") return -std::numbers::pi;
    const auto slash = text.find('/');
    if (slash != std::string::npos)
        return parse_real(key, text.substr(0, slash)) / parse_real(key, text.substr(slash + 1));
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v))
        throw ConfigError(fmt::format("malformed config: {} = '{}' is not a number", key, raw));
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!trim(item).empty()) parts.push_back(trim(item));
    return parts;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) out.push_back(parse_real(key, part));
    if (out.empty()) throw ConfigError(fmt::format("malformed config: {} is empty", key));
    return out;
}

class Config {
public:
    Config(const fs::path& path, const std::string& command) : command_(command) {
        if (!fs::exists(path)) throw ConfigError(fmt::format("config file '{}' not found", path.string()));
        try {
            pt::read_ini(path.string(), tree_);
        } catch (const pt::ini_parser_error& e) {
            throw ConfigError(fmt::format("malformed config: {}", e.what()));
        }
        for (const auto& [section, body] : tree_) {
            const auto it = allowed_keys().find(section);
            if (it == allowed_keys().end())
                throw ConfigError(fmt::format("malformed config: unknown section [{}]", section));
            for (const auto& [key, value] : body)
                if (!it->second.count(key))
                    throw ConfigError(fmt::format("malformed config: unknown key '{}' in [{}]", key, section));
        }
    }

    std::optional<std::string> raw(const std::string& section, const std::string& key) const {
        if (auto v = tree_.get_optional<std::string>(pt::ptree::path_type(section + "|" + key, '|')))
            return trim(*v);
        return std::nullopt;
    }
    std::string text(const std::string& key, const std::string& fallback) const {
        return raw(command_, key).value_or(fallback);
    }
    double real(const std::string& section, const std::string& key, double fallback) const {
        const auto v = raw(section, key);
        return v ? parse_real(section + "." + key, *v) : fallback;
    }
    long long integer(const std::string& section, const std::string& key, long long fallback) const {
        const double v = real(section, key, static_cast<double>(fallback));
        if (v != std::floor(v) || v < 0)
            throw ConfigError(fmt::format("malformed config: {}.{} must be a non-negative integer", section, key));
        return static_cast<long long>(v);
    }
    bool flag(const std::string& key, bool fallback) const {
        const auto v = raw(command_, key);
        if (!v) return fallback;
        if (*v == "true" || *v == "1") return true;
        if (*v == "false" || *v == "0") return false;
        throw ConfigError(fmt::format("malformed config: {}.{} must be true or false", command_, key));
    }
    std::vector<double> list(const std::string& key, const std::string& fallback) const {
        return parse_list(command_ + "." + key, text(key, fallback));
    }
    int trials(int fallback) const {
        const auto v = integer(command_, "trials", fallback);
        if (v < 1) throw ConfigError(fmt::format("malformed config: {}.trials must be at least 1", command_));
        return static_cast<int>(v);
    }

private:
    std::string command_;
    pt::ptree tree_;
};

struct Context {
    Grid grid;
    SpaceNorm space;
    std::uint64_t seed;
    fs::path out;
    std::string header;  // "# L=.. n=.. p=.. gamma=.. seed=.."
};

std::string format_exponent(double p) { return std::isinf(p) ? "inf" : fmt::format("{}", p); }

Context make_context(const Config& cfg, const Overrides& o) {
    const double L = o.grid_L.value_or(cfg.real("grid", "L", 16.0));
    const auto n = o.grid_n.value_or(static_cast<std::size_t>(cfg.integer("grid", "n", 1024)));
    const double p = cfg.real("space", "p", 2.0);
    const double gamma = cfg.real("space", "gamma", 0.0);
    const auto seed = o.seed.value_or(static_cast<std::uint64_t>(cfg.integer("run", "seed", 1)));
    const fs::path out = o.out.value_or(fs::path(cfg.raw("run", "out").value_or("out")));
    try {
        Context ctx{make_grid(L, n), SpaceNorm(p, gamma), seed, out, {}};
        ctx.header = fmt::format("# L={} n={} p={} gamma={} seed={}", L, n, format_exponent(p), gamma, seed);
        return ctx;
    } catch (const InvalidArgument& e) {
        throw ConfigError(fmt::format("malformed config: {}", e.what()));
    }
}

Symbol symbol_from(const Config& cfg, const std::string& fallback) {
    const auto text = cfg.text("symbol", fallback);
    try {
        return Symbol::parse(text);
    } catch (const ParseError& e) {
        throw DescriptorError(fmt::format("invalid descriptor: {}", e.what()));
    }
}

FunctionExpr function_from(const Config& cfg, const std::string& fallback) {
    const auto text = cfg.text("f", fallback);
    try {
        return FunctionExpr::parse(text);
    } catch (const ParseError& e) {
        throw DescriptorError(fmt::format("invalid descriptor: {}", e.what()));
    }
}

// Artifacts are assembled in memory and written once at the end of a run.
struct Artifacts {
    std::vector<std::pair<std::string, std::string>> files;

    void add(std::string name, std::string body) { files.emplace_back(std::move(name), std::move(body)); }
};

json run_header(const std::string& command, const Context& ctx) {
    return json{{"command", command},
                {"L", ctx.grid.half_width()},
                {"n", ctx.grid.size()},
                {"p", ctx.space.is_infinite() ? json("inf") : json(ctx.space.exponent())},
                {"gamma", ctx.space.weight_exponent()},
                {"seed", ctx.seed}};
}

struct Outcome {
    bool pass = true;
    std::string headline;
    json details = json::object();
};

Outcome run_sweep(const Config& cfg, const Context& ctx, Artifacts& art) {
    const auto a = symbol_from(cfg, "indicator(-1,1)");
    const auto band_values = cfg.list("band", "1,2");
    if (band_values.size() != 2 || !(band_values[0] < band_values[1]))
        throw ConfigError("malformed config: sweep.band must be lo,hi with lo < hi");
    const Interval band{band_values[0], band_values[1]};
    std::vector<double> shifts;
    for (double h : cfg.list("shifts", "4,8,16,32")) shifts.push_back(nearest_lattice_value(ctx.grid, h));

    const auto table = limit_operator_sweep({a, band_limited_bump(ctx.grid, band), band, shifts, ctx.space});
    std::ostringstream csv;
    csv << ctx.header << "\n";
    write_limit_csv(csv, table);
    art.add("sweep.csv", csv.str());

    double max_norm = 0.0;
    for (const auto& r : table.rows) max_norm = std::max(max_norm, r.norm);
    Outcome out;
    out.pass = !table.calibrated || table.all_within();
    out.headline = fmt::format("rows={} max_norm={:.3e} calibrated={}", table.rows.size(), max_norm,
                               table.calibrated ? "yes" : "no");
    out.details = {{"symbol", a.describe()}, {"rows", table.rows.size()}, {"max_norm", max_norm},
                   {"calibrated", table.calibrated}};
    return out;
}

Outcome run_mollify(const Config& cfg, const Context& ctx, Artifacts& art) {
    const auto f = function_from(cfg, "dilate(bump,2)");
    const auto kind_name = cfg.text("kernel", "gaussian");
    MollifierKind kind;
    if (kind_name == "gaussian")
        kind = MollifierKind::gaussian;
    else if (kind_name == "bump_spectrum")
        kind = MollifierKind::bump_spectrum;
    else
        throw ConfigError(fmt::format("malformed config: unknown kernel '{}'", kind_name));
    const auto deltas = cfg.list("deltas", "1,1/2,1/4,1/8,1/16,1/32,1/64");
    const bool check_decreasing = cfg.flag("check_decreasing", true);

    const auto rows = mollify_sweep(sample(f, ctx.grid), make_mollifier(kind, ctx.grid), deltas, ctx.space);
    std::ostringstream csv;
    csv << ctx.header << "\n";
    write_sweep_csv(csv, rows);
    art.add("mollify.csv", csv.str());

    bool pointwise = true, decreasing = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        pointwise = pointwise && rows[i].pointwise_ok;
        if (i > 0) decreasing = decreasing && rows[i].error < rows[i - 1].error;
    }
    Outcome out;
    out.pass = pointwise && (decreasing || !check_decreasing);
    out.headline = fmt::format("rows={} final_error={:.3e} pointwise={} decreasing={}", rows.size(),
                               rows.back().error, pointwise ? "yes" : "no", decreasing ? "yes" : "no");
    out.details = {{"f", f.describe()}, {"kernel", kind_name}, {"final_error", rows.back().error},
                   {"pointwise_ok", pointwise}, {"decreasing", decreasing}};
    return out;
}

Outcome run_stechkin(const Config& cfg, const Context& ctx, Artifacts&) {
    const auto a = symbol_from(cfg, "indicator(-1,1)");
    const auto report = stechkin_check(a, ctx.space, cfg.trials(20), ctx.seed, ctx.grid);
    Outcome out;
    out.pass = !report.violation;
    out.headline = report.summary();
    out.details = {{"symbol", a.describe()}, {"lower", report.lower},         {"v_norm", report.v_norm},
                   {"ratio", report.ratio},  {"calibrated", report.calibrated}, {"violation", report.violation}};
    return out;
}

Outcome run_maximal_check(const Config& cfg, const Context& ctx, Artifacts& art) {
    const auto f = sample(function_from(cfg, "indicator(-1,1)"), ctx.grid);
    const int trials = cfg.trials(20);
    const auto fast = maximal_function(f, MaximalMode::fast);
    double max_diff = max_abs_diff(fast, maximal_function(f, MaximalMode::oracle));
    Rng rng(ctx.seed);
    for (int i = 0; i < trials; ++i) {
        const auto probe = random_probe(ctx.grid, rng);
        max_diff = std::max(max_diff, max_abs_diff(maximal_function(probe, MaximalMode::fast),
                                                   maximal_function(probe, MaximalMode::oracle)));
    }

    // chi_{R \ [-1,1]}(t) / |t| <= (M chi_[-1,1])(t) at every node.
    const auto m_chi = maximal_function(sample(FunctionExpr::closed_indicator(-1.0, 1.0), ctx.grid));
    bool pointwise = true;
    for (std::size_t j = 0; j < ctx.grid.size(); ++j) {
        const double t = std::abs(ctx.grid.spatial_node(j));
        if (t > 1.0 && 1.0 / t > m_chi[j].real()) pointwise = false;
    }

    std::ostringstream csv;
    csv << ctx.header << "\nindex,t,f,maximal\n";
    for (std::size_t j = 0; j < f.size(); ++j)
        csv << fmt::format("{},{:.17g},{:.17g},{:.17g}\n", j, ctx.grid.spatial_node(j), std::abs(f[j]), fast[j].real());
    art.add("maximal.csv", csv.str());

    const double exponent = ctx.space.exponent();
    std::optional<double> estimate;
    if (exponent > 1.0 && !ctx.space.is_infinite())
        estimate = maximal_norm_estimate(ctx.space, trials, ctx.seed, ctx.grid);

    Outcome out;
    out.pass = max_diff <= 1e-12 && pointwise;
    out.headline = fmt::format("max_diff={:.3e} pointwise={}", max_diff, pointwise ? "yes" : "no");
    if (estimate) out.headline += fmt::format(" norm_estimate={:.4f}", *estimate);
    out.details = {{"max_diff", max_diff}, {"pointwise_ok", pointwise}};
    if (estimate) out.details["norm_estimate"] = *estimate;
    return out;
}

Outcome run_density(const Config& cfg, const Context& ctx, Artifacts& art) {
    const auto f_expr = function_from(cfg, "indicator(-1,1)");
    const double epsilon = cfg.real("density", "epsilon", 0.1);
    if (!(epsilon > 0.0)) throw ConfigError("malformed config: density.epsilon must be positive");
    Outcome out;
    try {
        const auto r = density_experiment(sample(f_expr, ctx.grid), epsilon, ctx.space);
        art.add("density.json", to_json(r) + "\n");
        out.pass = r.achieved < epsilon && r.band_mass < 1e-9;
        out.headline = fmt::format("delta={} achieved={:.4f} epsilon={} band_mass={:.1e}", r.delta, r.achieved,
                                   epsilon, r.band_mass);
        out.details = json::parse(to_json(r));
        out.details["sigma"] = r.sigma;
        out.details["band_mass"] = r.band_mass;
    } catch (const NoConvergence& e) {
        out.pass = false;
        out.headline = fmt::format("no convergence, best={:.4f} epsilon={}", e.lower(), epsilon);
        out.details = {{"best", e.lower()}, {"epsilon", epsilon}};
    }
    return out;
}

Outcome run_axioms(const Config& cfg, const Context& ctx, Artifacts& art) {
    const int trials = cfg.trials(50);
    std::vector<SpaceNorm> spaces;
    if (const auto list = cfg.raw("axioms", "spaces")) {
        for (const auto& item : split(*list, ';')) {
            const auto parts = split(item, ':');
            if (parts.size() != 2) throw ConfigError("malformed config: axioms.spaces entries are p:gamma");
            try {
                spaces.emplace_back(parse_real("axioms.spaces", parts[0]), parse_real("axioms.spaces", parts[1]));
            } catch (const InvalidArgument& e) {
                throw ConfigError(fmt::format("malformed config: {}", e.what()));
            }
        }
    } else {
        spaces.push_back(ctx.space);
    }

    json reports = json::array();
    std::size_t passed = 0;
    for (const auto& space : spaces) {
        const auto report = verify_axioms(space, trials, ctx.seed, ctx.grid);
        if (report.all_pass()) ++passed;
        reports.push_back({{"space", space.describe()}, {"results", json::parse(to_json(report))}});
    }
    art.add("axioms.json", reports.dump(2) + "\n");

    Outcome out;
    out.pass = passed == spaces.size();
    out.headline = fmt::format("spaces={} passed={}", spaces.size(), passed);
    out.details = {{"spaces", spaces.size()}, {"passed", passed}};
    return out;
}

using Runner = std::function<Outcome(const Config&, const Context&, Artifacts&)>;

const std::map<std::string, Runner>& runners() {
    static const std::map<std::string, Runner> table{
        {"sweep", run_sweep},     {"mollify", run_mollify}, {"stechkin", run_stechkin},
        {"maximal-check", run_maximal_check}, {"density", run_density}, {"axioms", run_axioms},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> names{"sweep", "mollify", "stechkin", "maximal-check", "density", "axioms"};
    return names;
}

RunResult run_experiment(const std::string& command, const fs::path& config_path, const Overrides& overrides) {
    RunResult result;
    const auto runner = runners().find(command);
    if (runner == runners().end()) {
        result.summary = fmt::format("unknown command '{}'", command);
        return result;
    }
    try {
        const Config cfg(config_path, command);
        const auto ctx = make_context(cfg, overrides);
        Artifacts art;
        const auto outcome = runner->second(cfg, ctx, art);

        auto summary = run_header(command, ctx);
        summary["pass"] = outcome.pass;
        summary["headline"] = outcome.headline;
        summary["details"] = outcome.details;
        art.add(command + "_summary.json", summary.dump() + "\n");

        fs::create_directories(ctx.out);
        for (const auto& [name, body] : art.files) {
            const auto path = ctx.out / name;
            std::ofstream os(path, std::ios::binary);
            os << body;
            if (!os) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
            result.artifacts.push_back(path);
        }
        result.exit_code = outcome.pass ? ok : assertion_failed;
        result.summary = fmt::format("{}: {} {}", command, outcome.pass ? "PASS" : "FAIL", outcome.headline);
    } catch (const ConfigError& e) {
        result.summary = e.what();
    } catch (const DescriptorError& e) {
        result.summary = e.what();
    } catch (const PreconditionError& e) {
        result.summary = fmt::format("invalid experiment parameters: {}", e.what());
    } catch (const std::exception& e) {
        result.summary = fmt::format("{} failed: {}", command, e.what());
    }
    return result;
}

}  // namespace fconv::cli
