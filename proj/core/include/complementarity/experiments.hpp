#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "complementarity/combiner.hpp"
#include "complementarity/fitting.hpp"
#include "complementarity/synthgen.hpp"

namespace hmc {

/// overlap: agents share z features, each sees (d - z)/2 more of its own.
/// alpha:   human sees the first d - 1 features, machine the last one,
///          zeroed per row with probability 1 - alpha.
/// objective: both see every feature; the human fits a rank-weighted loss
///          and the joint policy is scored by a blended objective.
enum class ExperimentKind { overlap, alpha, objective };

std::string_view to_string(ExperimentKind k);
ExperimentKind parse_experiment_kind(std::string_view s);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::overlap;
    std::size_t n_train = 8000;
    std::size_t n_test = 2000;
    std::size_t replicates = 200;
    std::uint64_t seed = 0;

    std::vector<std::size_t> z_values{0, 2, 4, 6, 8};
    std::vector<double> alpha_values{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    double a = 0.5;
    std::vector<double> b_values{0.25, 0.5, 0.75, 1.0, 1.25, 1.5};
    std::vector<double> theta_values{0.0, 0.25, 0.5, 0.75, 1.0};
    // Lets the objective sweep use b values whose rank weights go negative.
    bool allow_negative = false;

    DgpConfig dgp;
    FitConfig fit;
    CombinerConfig combiner;

    /// Defaults for `kind` (200 replicates for overlap/alpha, 5 for objective).
    static ExperimentConfig defaults(ExperimentKind kind);

    /// Throws InvalidConfigError naming the offending field.
    void validate() const;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Parameter values of one sweep point. Fields the kind does not use stay 0.
struct SweepPoint {
    ExperimentKind kind = ExperimentKind::overlap;
    std::size_t z = 0;
    double alpha = 0.0;
    double a = 0.0;
    double b = 0.0;
    double theta = 0.0;

    bool operator==(const SweepPoint&) const = default;
};

/// Everything a single replicate needs besides its sweep point.
struct ReplicateSetup {
    DgpConfig dgp;  // n and seed are ignored
    std::size_t n_train = 8000;
    std::size_t n_test = 2000;
    FitConfig fit;
    CombinerConfig combiner;
    bool allow_negative = false;
};

struct ReplicateRecord {
    std::size_t point_index = 0;
    std::size_t replicate = 0;
    std::uint64_t seed = 0;
    double c_across = 0.0;
    double c_within = 0.0;
    // Test-set mean squared error of the joint, human and machine policies.
    double loss_joint = 0.0;
    double loss_h = 0.0;
    double loss_m = 0.0;
    // objective kind only: G(joint) - G(human), G(joint) - G(machine).
    std::optional<double> dG_h;
    std::optional<double> dG_m;

    bool operator==(const ReplicateRecord&) const = default;
};

struct MetricSummary {
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation; 0 for a single replicate

    bool operator==(const MetricSummary&) const = default;
};

struct PointSummary {
    SweepPoint point;
    std::size_t replicates = 0;
    MetricSummary c_across, c_within, loss_joint, loss_h, loss_m;
    std::optional<MetricSummary> dG_h, dG_m;

    bool operator==(const PointSummary&) const = default;
};

struct ExperimentResult {
    ExperimentKind kind = ExperimentKind::overlap;
    std::vector<PointSummary> points;
    std::vector<ReplicateRecord> replicates;  // point-major, replicate-minor

    bool operator==(const ExperimentResult&) const = default;
};

ReplicateSetup replicate_setup(const ExperimentConfig& cfg);

std::vector<SweepPoint> sweep_points(const ExperimentConfig& cfg);

/// Seed of replicate `replicate` at sweep point `point_index`.
std::uint64_t replicate_seed(std::uint64_t base_seed, ExperimentKind kind, std::size_t point_index,
                             std::size_t replicate);

ReplicateRecord run_replicate_overlap(std::size_t z, const ReplicateSetup& setup, std::uint64_t seed);
ReplicateRecord run_replicate_alpha(double alpha, const ReplicateSetup& setup, std::uint64_t seed);
ReplicateRecord run_replicate_objective(double a, double b, double theta, const ReplicateSetup& setup,
                                        std::uint64_t seed);

ReplicateRecord run_replicate(const SweepPoint& point, const ReplicateSetup& setup, std::uint64_t seed);

/// Mean and sample standard deviation.
MetricSummary summarize(const std::vector<double>& values);

/// Runs every sweep point `cfg.replicates` times on up to `threads` worker
/// threads. The result depends only on cfg, never on `threads`. A failing
/// replicate aborts the run with an Error naming (point, replicate, seed).
ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned threads = 1);

} // namespace hmc
