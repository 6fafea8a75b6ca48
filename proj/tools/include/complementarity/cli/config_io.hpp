#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "complementarity/experiments.hpp"

namespace hmc::cli {

/// Experiment configuration files are flat `key = value` text with dotted
/// section names; `#` starts a comment and lists are comma separated.
///
///   kind = overlap               # overlap | alpha | objective (required)
///   seed = 42
///   n_train = 8000
///   n_test = 2000
///   replicates = 200             # default 5 for kind = objective
///   allow_negative = false
///   sweep.z = 0, 2, 4, 6, 8
///   sweep.alpha = 0, 0.1, ..., 1
///   sweep.a = 0.5
///   sweep.b = 0.25, 0.5, 0.75, 1, 1.25, 1.5
///   sweep.theta = 0, 0.25, 0.5, 0.75, 1
///   dgp.d = 10
///   dgp.noise_sd = 1
///   dgp.beta =                   # empty: all ones
///   fit.include_intercept = false
///   fit.max_outer_iters = 100
///   fit.convergence_tol = 1e-8
///   fit.ridge_epsilon = 1e-10
///   fit.rank_mode = sorted       # sorted | fixed_index
///   combiner.tie_break = machine # machine | human | half
///   combiner.max_iters = 200
///   combiner.tol = 1e-9
///   combiner.restarts = 5
///   combiner.grid_resolution = 0.01
///   combiner.step_size = 0.1
///   combiner.seed = 0
///
/// Unknown or repeated keys are errors. Omitted keys keep the defaults of
/// ExperimentConfig::defaults(kind).
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Every key in canonical order; parse_config(to_config_text(c)) == c.
std::string to_config_text(const ExperimentConfig& cfg);
std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg);

const std::vector<std::string>& config_keys();

} // namespace hmc::cli
