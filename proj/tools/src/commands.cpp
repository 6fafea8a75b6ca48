#include "complementarity/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "complementarity/cli/config_io.hpp"
#include "complementarity/cli/csv.hpp"
#include "complementarity/cli/manifest.hpp"
#include "complementarity/errors.hpp"
#include "complementarity/metrics.hpp"
#include "json.hpp"

#ifndef COMPLEMENTARITY_VERSION
#define COMPLEMENTARITY_VERSION "0.0.0"
#endif

namespace hmc::cli {

namespace fs = std::filesystem;

const char* tool_version() { return COMPLEMENTARITY_VERSION; }

namespace {

const std::vector<std::string> kPredictionsHeader{"instance_id", "y", "pred_h", "pred_m"};
const std::vector<std::string> kWeightsHeader{"instance_id", "w_h", "w_m"};

std::string joined(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
}

void require_header(const CsvTable& t, const std::vector<std::string>& expected, const fs::path& path) {
    if (t.header != expected) {
        throw StructuralError(path.string() + ": header must be '" + joined(expected) + "', found '" +
                              joined(t.header) + "'");
    }
}

double cell_double(const CsvTable& t, std::size_t row, std::size_t col) {
    double v = 0.0;
    try {
        v = parse_double(t.rows[row][col]);
    } catch (const std::invalid_argument& e) {
        throw StructuralError("row " + std::to_string(row + 1) + ", column '" + t.header[col] + "': " + e.what());
    }
    if (!std::isfinite(v)) {
        throw StructuralError("row " + std::to_string(row + 1) + ", column '" + t.header[col] + "': non-finite value '" +
                              t.rows[row][col] + "'");
    }
    return v;
}

std::int64_t cell_int(const CsvTable& t, std::size_t row, std::size_t col) {
    try {
        return parse_int64(t.rows[row][col]);
    } catch (const std::invalid_argument& e) {
        throw StructuralError("row " + std::to_string(row + 1) + ", column '" + t.header[col] + "': " + e.what());
    }
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    return out;
}

// Runs `body`, mapping exceptions onto exit codes.
template <typename F>
int guarded(std::ostream& err, const char* command, F&& body) {
    try {
        return body();
    } catch (const InvalidConfigError& e) {
        err << command << ": invalid configuration: " << e.what() << '\n';
        return kUsageError;
    } catch (const StructuralError& e) {
        err << command << ": invalid input: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << command << ": " << e.what() << '\n';
        return kRuntimeFailure;
    }
}

std::vector<std::string> sweep_columns(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::overlap: return {"z"};
    case ExperimentKind::alpha: return {"alpha"};
    case ExperimentKind::objective: return {"a", "b", "theta"};
    }
    return {};
}

std::vector<std::string> sweep_values(const SweepPoint& p) {
    switch (p.kind) {
    case ExperimentKind::overlap: return {std::to_string(p.z)};
    case ExperimentKind::alpha: return {format_double(p.alpha)};
    case ExperimentKind::objective: return {format_double(p.a), format_double(p.b), format_double(p.theta)};
    }
    return {};
}

} // namespace

std::vector<std::string> results_header(ExperimentKind kind) {
    std::vector<std::string> h{"kind"};
    for (auto& c : sweep_columns(kind)) h.push_back(c);
    h.push_back("replicates");
    std::vector<std::string> metrics{"c_across", "c_within", "loss_joint", "loss_h", "loss_m"};
    if (kind == ExperimentKind::objective) {
        metrics.push_back("dG_h");
        metrics.push_back("dG_m");
    }
    for (auto& m : metrics) {
        h.push_back(m + "_mean");
        h.push_back(m + "_std");
    }
    return h;
}

std::vector<std::string> replicates_header(ExperimentKind kind) {
    std::vector<std::string> h{"kind"};
    for (auto& c : sweep_columns(kind)) h.push_back(c);
    for (const char* c : {"replicate", "seed", "c_across", "c_within", "loss_joint", "loss_h", "loss_m"}) h.emplace_back(c);
    if (kind == ExperimentKind::objective) {
        h.emplace_back("dG_h");
        h.emplace_back("dG_m");
    }
    return h;
}

void write_results_csv(std::ostream& out, const ExperimentResult& result) {
    write_csv_row(out, results_header(result.kind));
    for (const auto& p : result.points) {
        std::vector<std::string> row{std::string(to_string(result.kind))};
        for (auto& v : sweep_values(p.point)) row.push_back(v);
        row.push_back(std::to_string(p.replicates));
        auto add = [&](const MetricSummary& s) {
            row.push_back(format_double(s.mean));
            row.push_back(format_double(s.std));
        };
        add(p.c_across);
        add(p.c_within);
        add(p.loss_joint);
        add(p.loss_h);
        add(p.loss_m);
        if (result.kind == ExperimentKind::objective) {
            add(p.dG_h.value_or(MetricSummary{}));
            add(p.dG_m.value_or(MetricSummary{}));
        }
        write_csv_row(out, row);
    }
}

void write_replicates_csv(std::ostream& out, const ExperimentResult& result, const std::vector<SweepPoint>& points) {
    write_csv_row(out, replicates_header(result.kind));
    for (const auto& r : result.replicates) {
        std::vector<std::string> row{std::string(to_string(result.kind))};
        for (auto& v : sweep_values(points.at(r.point_index))) row.push_back(v);
        row.push_back(std::to_string(r.replicate));
        row.push_back(std::to_string(r.seed));
        for (double v : {r.c_across, r.c_within, r.loss_joint, r.loss_h, r.loss_m}) row.push_back(format_double(v));
        if (result.kind == ExperimentKind::objective) {
            row.push_back(format_double(r.dG_h.value_or(0.0)));
            row.push_back(format_double(r.dG_m.value_or(0.0)));
        }
        write_csv_row(out, row);
    }
}

PredictionSet read_predictions_csv(const fs::path& path) {
    const CsvTable t = read_csv_file(path.string());
    require_header(t, kPredictionsHeader, path);
    if (t.rows.empty()) throw StructuralError(path.string() + ": no data rows");
    const auto n = static_cast<Eigen::Index>(t.rows.size());
    std::vector<std::int64_t> ids(t.rows.size());
    Vector y(n), ph(n), pm(n);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto i = static_cast<Eigen::Index>(r);
        ids[r] = cell_int(t, r, 0);
        y[i] = cell_double(t, r, 1);
        ph[i] = cell_double(t, r, 2);
        pm[i] = cell_double(t, r, 3);
    }
    return PredictionSet(std::move(ids), std::move(y), std::move(ph), std::move(pm));
}

WeightVector read_weights_csv(const fs::path& path, std::vector<std::int64_t>* ids_out) {
    const CsvTable t = read_csv_file(path.string());
    require_header(t, kWeightsHeader, path);
    if (t.rows.empty()) throw StructuralError(path.string() + ": no data rows");
    const auto n = static_cast<Eigen::Index>(t.rows.size());
    std::vector<std::int64_t> ids(t.rows.size());
    Vector wh(n), wm(n);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto i = static_cast<Eigen::Index>(r);
        ids[r] = cell_int(t, r, 0);
        wh[i] = cell_double(t, r, 1);
        wm[i] = cell_double(t, r, 2);
        const bool in_range = wh[i] >= 0.0 && wh[i] <= 1.0 && wm[i] >= 0.0 && wm[i] <= 1.0;
        if (!in_range || std::abs(wh[i] + wm[i] - 1.0) > kSimplexTolerance) {
            throw InvalidConfigError("row " + std::to_string(r + 1) + ": weights (" + t.rows[r][1] + ", " + t.rows[r][2] +
                                     ") violate the simplex constraint w_h + w_m = 1, w in [0,1]");
        }
    }
    if (ids_out) *ids_out = std::move(ids);
    return WeightVector(std::move(wh), std::move(wm));
}

void write_weights_csv(std::ostream& out, const std::vector<std::int64_t>& ids, const WeightVector& w) {
    write_csv_row(out, kWeightsHeader);
    for (std::size_t r = 0; r < ids.size(); ++r) {
        const auto i = static_cast<Eigen::Index>(r);
        write_csv_row(out, {std::to_string(ids[r]), format_double(w.human()[i]), format_double(w.machine()[i])});
    }
}

int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, "simulate", [&] {
        const std::string started = utc_timestamp();
        const ExperimentConfig cfg = load_config(opts.config_path.string());
        cfg.validate();

        const ExperimentResult result = run_experiment(cfg, opts.threads);

        ensure_dir(opts.out_dir);
        {
            auto f = open_out(opts.out_dir / "results.csv");
            write_results_csv(f, result);
        }
        {
            auto f = open_out(opts.out_dir / "replicates.csv");
            write_replicates_csv(f, result, sweep_points(cfg));
        }
        RunManifest m;
        m.tool_version = tool_version();
        m.command = "simulate";
        m.config = config_entries(cfg);
        m.config_text = to_config_text(cfg);
        m.seed = cfg.seed;
        m.started_at = started;
        m.finished_at = utc_timestamp();
        m.files = {"results.csv", "replicates.csv"};
        write_manifest(opts.out_dir, m);

        out << "simulate: " << result.points.size() << " sweep points x " << cfg.replicates << " replicates -> "
            << opts.out_dir.string() << '\n';
        return static_cast<int>(kSuccess);
    });
}

int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, "analyze", [&] {
        const std::string started = utc_timestamp();
        opts.spec.validate();
        opts.combiner.validate();
        const PredictionSet preds = read_predictions_csv(opts.predictions_path);
        const WeightVector w = optimize_weights(preds, opts.spec, opts.combiner);
        const ComplementarityReport report = summarize_report(preds, w, opts.spec);

        ensure_dir(opts.out_dir);
        {
            auto f = open_out(opts.out_dir / "weights.csv");
            write_weights_csv(f, preds.instance_ids(), w);
        }

        nlohmann::ordered_json j;
        j["c_across"] = report.c_across;
        j["c_within"] = report.c_within;
        j["value_joint"] = report.value_joint;
        j["value_h"] = report.value_h;
        j["value_m"] = report.value_m;
        j["complementary"] = report.complementary;
        j["n"] = report.n;
        j["spec"] = {{"kind", to_string(opts.spec.kind)},
                     {"a", opts.spec.a},
                     {"b", opts.spec.b},
                     {"theta", opts.spec.theta},
                     {"rank_mode", to_string(opts.spec.rank_mode)},
                     {"direction", to_string(opts.spec.direction)},
                     {"allow_negative", opts.spec.allow_negative}};
        j["tie_break"] = to_string(opts.combiner.tie_break);
        j["definitions"] = {
            {"c_across", "population variance of w_m across instances (equal to that of w_h); range [0, 0.25]"},
            {"c_within", "1 - (1/n) * sum_i (w_h[i] - w_m[i])^2; range [0, 1]"},
            {"complementary", "value_joint strictly better than both value_h and value_m under the direction"},
            {"oracle", "weights are optimized with access to the true targets y of these instances; "
                       "the result is an upper bound on achievable joint performance, not a deployable combiner"}};
        nlohmann::ordered_json warnings = nlohmann::ordered_json::array();
        if (report.single_instance) warnings.push_back("n = 1: c_across is trivially 0");
        j["warnings"] = warnings;
        {
            auto f = open_out(opts.out_dir / "report.json");
            f << j.dump(2) << '\n';
        }

        RunManifest m;
        m.tool_version = tool_version();
        m.command = "analyze";
        m.config = {{"predictions", opts.predictions_path.string()},
                    {"spec.kind", std::string(to_string(opts.spec.kind))},
                    {"spec.a", format_double(opts.spec.a)},
                    {"spec.b", format_double(opts.spec.b)},
                    {"spec.theta", format_double(opts.spec.theta)},
                    {"spec.rank_mode", std::string(to_string(opts.spec.rank_mode))},
                    {"spec.allow_negative", opts.spec.allow_negative ? "true" : "false"},
                    {"combiner.tie_break", std::string(to_string(opts.combiner.tie_break))},
                    {"combiner.seed", std::to_string(opts.combiner.seed)}};
        m.seed = opts.combiner.seed;
        m.started_at = started;
        m.finished_at = utc_timestamp();
        m.files = {"weights.csv", "report.json"};
        write_manifest(opts.out_dir, m);

        out << "analyze: n=" << report.n << " c_across=" << format_double(report.c_across)
            << " c_within=" << format_double(report.c_within)
            << " complementary=" << (report.complementary ? "true" : "false") << '\n';
        return static_cast<int>(kSuccess);
    });
}

int cmd_metrics(const fs::path& weights_path, std::ostream& out, std::ostream& err) {
    return guarded(err, "metrics", [&] {
        const WeightVector w = read_weights_csv(weights_path);
        nlohmann::ordered_json j;
        j["c_across"] = c_across(w);
        j["c_within"] = c_within(w);
        out << j.dump() << '\n';
        return static_cast<int>(kSuccess);
    });
}

namespace {

struct FigureSpec {
    const char* name;
    ExperimentKind kind;
    std::vector<std::string> axes;  // x (and y) columns
    // panel file suffix -> metrics in that panel
    std::vector<std::pair<std::string, std::vector<std::string>>> panels;
};

FigureSpec figure_spec(Figure f) {
    switch (f) {
    case Figure::fig2:
        return {"fig2", ExperimentKind::overlap, {"z"},
                {{"c_across", {"c_across"}}, {"c_within", {"c_within"}}, {"loss", {"loss_joint", "loss_h", "loss_m"}}}};
    case Figure::fig3:
        return {"fig3", ExperimentKind::alpha, {"alpha"},
                {{"c_across", {"c_across"}}, {"c_within", {"c_within"}}, {"loss", {"loss_joint", "loss_h", "loss_m"}}}};
    case Figure::fig4:
        return {"fig4", ExperimentKind::objective, {"b", "theta"},
                {{"c_across", {"c_across"}}, {"c_within", {"c_within"}}, {"dG_h", {"dG_h"}}, {"dG_m", {"dG_m"}}}};
    }
    throw InvalidConfigError("unknown figure");
}

} // namespace

int cmd_plotdata(const PlotDataOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, "plot-data", [&] {
        const std::string started = utc_timestamp();
        const FigureSpec fig = figure_spec(opts.figure);
        const CsvTable t = read_csv_file(opts.results_path.string());

        auto need = [&](const std::string& col) {
            const auto idx = t.column(col);
            if (idx == CsvTable::npos) {
                throw StructuralError("results file lacks column '" + col + "' required for " + fig.name);
            }
            return idx;
        };
        const auto kind_col = need("kind");
        std::vector<std::size_t> axis_cols;
        for (auto& a : fig.axes) axis_cols.push_back(need(a));
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            if (t.rows[r][kind_col] != to_string(fig.kind)) {
                throw StructuralError("row " + std::to_string(r + 1) + ": kind '" + t.rows[r][kind_col] + "' but " +
                                      fig.name + " needs '" + std::string(to_string(fig.kind)) + "'");
            }
        }

        ensure_dir(opts.out_dir);
        std::vector<std::string> written;
        for (const auto& [panel, metrics] : fig.panels) {
            std::vector<std::pair<std::size_t, std::size_t>> cols;
            for (auto& m : metrics) cols.emplace_back(need(m + "_mean"), need(m + "_std"));

            const std::string file = std::string(fig.name) + "_" + panel + ".csv";
            auto f = open_out(opts.out_dir / file);
            std::vector<std::string> header = fig.axes.size() == 1 ? std::vector<std::string>{"x"}
                                                                    : std::vector<std::string>{"x", "y"};
            for (const char* c : {"metric", "mean", "std"}) header.emplace_back(c);
            write_csv_row(f, header);
            for (const auto& row : t.rows) {
                for (std::size_t k = 0; k < metrics.size(); ++k) {
                    std::vector<std::string> line;
                    for (auto c : axis_cols) line.push_back(row[c]);
                    line.push_back(metrics[k]);
                    line.push_back(row[cols[k].first]);
                    line.push_back(row[cols[k].second]);
                    write_csv_row(f, line);
                }
            }
            written.push_back(file);
        }

        RunManifest m;
        m.tool_version = tool_version();
        m.command = "plot-data";
        m.config = {{"results", opts.results_path.string()}, {"figure", fig.name}};
        m.started_at = started;
        m.finished_at = utc_timestamp();
        m.files = written;
        write_manifest(opts.out_dir, m);

        out << "plot-data: " << written.size() << " panel files -> " << opts.out_dir.string() << '\n';
        return static_cast<int>(kSuccess);
    });
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Oracle convex aggregation of human and machine predictions with complementarity metrics", "complementarity"};
    app.set_version_flag("--version", std::string(tool_version()));
    app.require_subcommand(1);

    SimulateOptions sim;
    std::string sim_config, sim_out;
    auto* simulate = app.add_subcommand("simulate", "Run a seeded synthetic experiment sweep");
    simulate->add_option("--config", sim_config, "Experiment config file (key = value)")->required();
    simulate->add_option("--out", sim_out, "Output directory")->required();
    simulate->add_option("--threads", sim.threads, "Worker threads (does not change results)")
        ->check(CLI::PositiveNumber);

    std::string an_preds, an_out, an_kind = "mse", an_tie = "machine", an_rank = "sorted";
    AnalyzeOptions an;
    auto* analyze = app.add_subcommand("analyze", "Oracle weights and report for a predictions.csv");
    analyze->add_option("predictions", an_preds, "CSV with columns instance_id,y,pred_h,pred_m")->required();
    analyze->add_option("--out", an_out, "Output directory")->required();
    analyze->add_option("--spec-kind", an_kind, "mse | rank_weighted | blended");
    analyze->add_option("--a", an.spec.a, "Probability-weighting fixed point");
    analyze->add_option("--b", an.spec.b, "Probability-weighting curvature");
    analyze->add_option("--theta", an.spec.theta, "Weight on the squared error in the blended objective");
    analyze->add_option("--tie-break", an_tie, "machine | human | half");
    analyze->add_option("--rank-mode", an_rank, "sorted | fixed_index");
    analyze->add_flag("--allow-negative", an.spec.allow_negative, "Accept negative rank weights");
    analyze->add_option("--seed", an.combiner.seed, "Seed for the random starts");

    std::string me_weights;
    auto* metrics = app.add_subcommand("metrics", "Print c_across and c_within for a weights.csv");
    metrics->add_option("weights", me_weights, "CSV with columns instance_id,w_h,w_m")->required();

    std::string pd_results, pd_out, pd_figure;
    auto* plot = app.add_subcommand("plot-data", "Long-format panel CSVs for a figure");
    plot->add_option("results", pd_results, "results.csv written by simulate")->required();
    plot->add_option("--figure", pd_figure, "fig2 | fig3 | fig4")->required()->check(CLI::IsMember({"fig2", "fig3", "fig4"}));
    plot->add_option("--out", pd_out, "Output directory")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForVersion&) {
        out << tool_version() << '\n';
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        if (e.get_exit_code() == 0) return kSuccess;
        return kUsageError;
    }

    if (simulate->parsed()) {
        sim.config_path = sim_config;
        sim.out_dir = sim_out;
        return cmd_simulate(sim, out, err);
    }
    if (analyze->parsed()) {
        try {
            an.spec.kind = parse_objective_kind(an_kind);
            an.spec.rank_mode = parse_rank_mode(an_rank);
            an.combiner.tie_break = parse_tie_break(an_tie);
        } catch (const InvalidConfigError& e) {
            err << "analyze: " << e.what() << '\n';
            return kUsageError;
        }
        an.predictions_path = an_preds;
        an.out_dir = an_out;
        return cmd_analyze(an, out, err);
    }
    if (metrics->parsed()) return cmd_metrics(me_weights, out, err);
    if (plot->parsed()) {
        PlotDataOptions po;
        po.results_path = pd_results;
        po.out_dir = pd_out;
        po.figure = pd_figure == "fig2" ? Figure::fig2 : pd_figure == "fig3" ? Figure::fig3 : Figure::fig4;
        return cmd_plotdata(po, out, err);
    }
    return kUsageError;
}

} // namespace hmc::cli
