#include "complementarity/cli/config_io.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "complementarity/cli/csv.hpp"
#include "complementarity/errors.hpp"

namespace hmc::cli {

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ", ";
        out += parts[i];
    }
    return out;
}

std::string doubles(const std::vector<double>& v) {
    std::vector<std::string> parts;
    for (double x : v) parts.push_back(format_double(x));
    return join(parts);
}

std::string sizes(const std::vector<std::size_t>& v) {
    std::vector<std::string> parts;
    for (auto x : v) parts.push_back(std::to_string(x));
    return join(parts);
}

std::string boolean(bool b) { return b ? "true" : "false"; }

bool parse_bool(std::string_view s) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw std::invalid_argument("expected true|false, got '" + std::string(s) + "'");
}

std::vector<double> parse_doubles(std::string_view s) {
    std::vector<double> out;
    if (trim(s).empty()) return out;
    for (const auto& part : split(s, ',')) out.push_back(parse_double(part));
    return out;
}

std::vector<std::size_t> parse_sizes(std::string_view s) {
    std::vector<std::size_t> out;
    if (trim(s).empty()) return out;
    for (const auto& part : split(s, ',')) out.push_back(static_cast<std::size_t>(parse_uint64(part)));
    return out;
}

std::size_t parse_size(std::string_view s) { return static_cast<std::size_t>(parse_uint64(s)); }

using Setter = std::function<void(ExperimentConfig&, std::string_view)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table{
        {"kind", [](ExperimentConfig& c, std::string_view v) { c.kind = parse_experiment_kind(v); }},
        {"seed", [](ExperimentConfig& c, std::string_view v) { c.seed = parse_uint64(v); }},
        {"n_train", [](ExperimentConfig& c, std::string_view v) { c.n_train = parse_size(v); }},
        {"n_test", [](ExperimentConfig& c, std::string_view v) { c.n_test = parse_size(v); }},
        {"replicates", [](ExperimentConfig& c, std::string_view v) { c.replicates = parse_size(v); }},
        {"allow_negative", [](ExperimentConfig& c, std::string_view v) { c.allow_negative = parse_bool(v); }},
        {"sweep.z", [](ExperimentConfig& c, std::string_view v) { c.z_values = parse_sizes(v); }},
        {"sweep.alpha", [](ExperimentConfig& c, std::string_view v) { c.alpha_values = parse_doubles(v); }},
        {"sweep.a", [](ExperimentConfig& c, std::string_view v) { c.a = parse_double(v); }},
        {"sweep.b", [](ExperimentConfig& c, std::string_view v) { c.b_values = parse_doubles(v); }},
        {"sweep.theta", [](ExperimentConfig& c, std::string_view v) { c.theta_values = parse_doubles(v); }},
        {"dgp.d", [](ExperimentConfig& c, std::string_view v) { c.dgp.d = parse_size(v); }},
        {"dgp.noise_sd", [](ExperimentConfig& c, std::string_view v) { c.dgp.noise_sd = parse_double(v); }},
        {"dgp.beta", [](ExperimentConfig& c, std::string_view v) { c.dgp.beta = parse_doubles(v); }},
        {"fit.include_intercept", [](ExperimentConfig& c, std::string_view v) { c.fit.include_intercept = parse_bool(v); }},
        {"fit.max_outer_iters", [](ExperimentConfig& c, std::string_view v) { c.fit.max_outer_iters = parse_size(v); }},
        {"fit.convergence_tol", [](ExperimentConfig& c, std::string_view v) { c.fit.convergence_tol = parse_double(v); }},
        {"fit.ridge_epsilon", [](ExperimentConfig& c, std::string_view v) { c.fit.ridge_epsilon = parse_double(v); }},
        {"fit.rank_mode", [](ExperimentConfig& c, std::string_view v) { c.fit.rank_mode = parse_rank_mode(v); }},
        {"combiner.tie_break", [](ExperimentConfig& c, std::string_view v) { c.combiner.tie_break = parse_tie_break(v); }},
        {"combiner.max_iters", [](ExperimentConfig& c, std::string_view v) { c.combiner.max_iters = parse_size(v); }},
        {"combiner.tol", [](ExperimentConfig& c, std::string_view v) { c.combiner.tol = parse_double(v); }},
        {"combiner.restarts", [](ExperimentConfig& c, std::string_view v) { c.combiner.restarts = parse_size(v); }},
        {"combiner.grid_resolution", [](ExperimentConfig& c, std::string_view v) { c.combiner.grid_resolution = parse_double(v); }},
        {"combiner.step_size", [](ExperimentConfig& c, std::string_view v) { c.combiner.step_size = parse_double(v); }},
        {"combiner.seed", [](ExperimentConfig& c, std::string_view v) { c.combiner.seed = parse_uint64(v); }},
    };
    return table;
}

struct Line {
    std::size_t number;
    std::string key;
    std::string value;
};

} // namespace

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& c) {
    return {
        {"kind", std::string(to_string(c.kind))},
        {"seed", std::to_string(c.seed)},
        {"n_train", std::to_string(c.n_train)},
        {"n_test", std::to_string(c.n_test)},
        {"replicates", std::to_string(c.replicates)},
        {"allow_negative", boolean(c.allow_negative)},
        {"sweep.z", sizes(c.z_values)},
        {"sweep.alpha", doubles(c.alpha_values)},
        {"sweep.a", format_double(c.a)},
        {"sweep.b", doubles(c.b_values)},
        {"sweep.theta", doubles(c.theta_values)},
        {"dgp.d", std::to_string(c.dgp.d)},
        {"dgp.noise_sd", format_double(c.dgp.noise_sd)},
        {"dgp.beta", doubles(c.dgp.beta)},
        {"fit.include_intercept", boolean(c.fit.include_intercept)},
        {"fit.max_outer_iters", std::to_string(c.fit.max_outer_iters)},
        {"fit.convergence_tol", format_double(c.fit.convergence_tol)},
        {"fit.ridge_epsilon", format_double(c.fit.ridge_epsilon)},
        {"fit.rank_mode", std::string(to_string(c.fit.rank_mode))},
        {"combiner.tie_break", std::string(to_string(c.combiner.tie_break))},
        {"combiner.max_iters", std::to_string(c.combiner.max_iters)},
        {"combiner.tol", format_double(c.combiner.tol)},
        {"combiner.restarts", std::to_string(c.combiner.restarts)},
        {"combiner.grid_resolution", format_double(c.combiner.grid_resolution)},
        {"combiner.step_size", format_double(c.combiner.step_size)},
        {"combiner.seed", std::to_string(c.combiner.seed)},
    };
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (auto& [key, value] : config_entries(ExperimentConfig{})) k.push_back(key);
        return k;
    }();
    return keys;
}

std::string to_config_text(const ExperimentConfig& cfg) {
    std::ostringstream out;
    for (const auto& [key, value] : config_entries(cfg)) {
        out << key << " =";
        if (!value.empty()) out << ' ' << value;
        out << '\n';
    }
    return out.str();
}

ExperimentConfig parse_config(std::string_view text) {
    std::vector<Line> lines;
    std::set<std::string> seen;
    std::size_t number = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++number;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw InvalidConfigError("line " + std::to_string(number) + ": expected 'key = value'");
        }
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (!setters().contains(key)) {
            throw InvalidConfigError("line " + std::to_string(number) + ": unknown key '" + key + "'");
        }
        if (!seen.insert(key).second) {
            throw InvalidConfigError("line " + std::to_string(number) + ": key '" + key + "' given twice");
        }
        lines.push_back(Line{number, std::move(key), std::move(value)});
    }

    ExperimentConfig cfg;
    bool have_kind = false;
    for (const auto& l : lines) {
        if (l.key != "kind") continue;
        cfg = ExperimentConfig::defaults(parse_experiment_kind(l.value));
        have_kind = true;
    }
    if (!have_kind) throw InvalidConfigError("kind: missing required key (overlap|alpha|objective)");

    for (const auto& l : lines) {
        try {
            setters().at(l.key)(cfg, l.value);
        } catch (const InvalidConfigError& e) {
            throw InvalidConfigError("line " + std::to_string(l.number) + ": " + l.key + ": " + e.what());
        } catch (const std::invalid_argument& e) {
            throw InvalidConfigError("line " + std::to_string(l.number) + ": " + l.key + ": " + e.what());
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfigError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace hmc::cli
