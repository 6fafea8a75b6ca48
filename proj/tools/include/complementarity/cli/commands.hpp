#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "complementarity/combiner.hpp"
#include "complementarity/experiments.hpp"
#include "complementarity/types.hpp"

namespace hmc::cli {

/// Process exit codes.
enum ExitCode : int { kSuccess = 0, kRuntimeFailure = 1, kUsageError = 2 };

const char* tool_version();

struct SimulateOptions {
    std::filesystem::path config_path;
    std::filesystem::path out_dir;
    unsigned threads = 1;
};

struct AnalyzeOptions {
    std::filesystem::path predictions_path;
    std::filesystem::path out_dir;
    EvaluationSpec spec;
    CombinerConfig combiner;
};

enum class Figure { fig2, fig3, fig4 };

struct PlotDataOptions {
    std::filesystem::path results_path;
    Figure figure = Figure::fig2;
    std::filesystem::path out_dir;
};

/// Writes results.csv, replicates.csv and manifest.json.
int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);

/// Oracle weights for an external predictions.csv; writes weights.csv,
/// report.json and manifest.json.
int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err);

/// Prints {"c_across": ..., "c_within": ...} for a weights.csv.
int cmd_metrics(const std::filesystem::path& weights_path, std::ostream& out, std::ostream& err);

/// One long-format CSV per panel of the requested figure.
int cmd_plotdata(const PlotDataOptions& opts, std::ostream& out, std::ostream& err);

/// Entry point shared by the executable and the tests.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Lower-level pieces, exposed for tests.
std::vector<std::string> results_header(ExperimentKind kind);
std::vector<std::string> replicates_header(ExperimentKind kind);
void write_results_csv(std::ostream& out, const ExperimentResult& result);
void write_replicates_csv(std::ostream& out, const ExperimentResult& result, const std::vector<SweepPoint>& points);

/// Throws StructuralError naming the row and column on schema violations.
PredictionSet read_predictions_csv(const std::filesystem::path& path);
WeightVector read_weights_csv(const std::filesystem::path& path, std::vector<std::int64_t>* ids = nullptr);
void write_weights_csv(std::ostream& out, const std::vector<std::int64_t>& ids, const WeightVector& w);

} // namespace hmc::cli
