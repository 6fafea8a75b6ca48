#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "complementarity/types.hpp"

namespace hmc {

/// Weight given to the human when both agents predict the same value (the
/// loss does not depend on the weight): machine -> 0, human -> 1, half -> 0.5.
enum class TieBreak { machine, human, half };

std::string_view to_string(TieBreak t);
TieBreak parse_tie_break(std::string_view s);
double tie_weight(TieBreak t) noexcept;

struct CombinerConfig {
    TieBreak tie_break = TieBreak::machine;
    std::size_t max_iters = 200;
    double tol = 1e-9;
    // Random starts in addition to the four deterministic ones.
    std::size_t restarts = 5;
    double grid_resolution = 0.01;
    double step_size = 0.1;
    std::uint64_t seed = 0;

    void validate() const;
    bool operator==(const CombinerConfig&) const = default;
};

/// argmin over w in [0,1] of (w * pred_h + (1 - w) * pred_m - y)^2.
double closed_form_weight(double pred_h, double pred_m, double y, const CombinerConfig& cfg = {});

/// Oracle weights for the squared loss. The objective is separable, so each
/// instance gets its closed-form weight.
///
/// Oracle semantics: the weights are chosen with access to the true targets
/// of the instances they are applied to. The result bounds what any
/// deployable combiner could achieve; it is not itself deployable.
WeightVector optimize_weights_mse(const PredictionSet& preds, const CombinerConfig& cfg = {});

struct CombinerResult {
    WeightVector weights;
    double objective = 0.0;
    std::size_t best_start = 0;
    std::size_t iterations = 0;  // summed over starts
    bool polished = false;       // projected-gradient pass ran
};

/// Oracle weights for a non-separable (rank-weighted or blended) objective.
///
/// Multi-start alternation: with the loss ranking frozen every instance has
/// a constant coefficient, so each weight is solved in closed form; the
/// ranking is then recomputed. Starts are all-machine, all-human, all-half,
/// the squared-loss optimum and `cfg.restarts` seeded random vectors. When
/// the alternation cycles a projected-gradient pass polishes the best
/// iterate. The result never scores worse than either constant policy.
CombinerResult solve_weights_general(const PredictionSet& preds, const EvaluationSpec& spec,
                                     const CombinerConfig& cfg = {});

WeightVector optimize_weights_general(const PredictionSet& preds, const EvaluationSpec& spec,
                                      const CombinerConfig& cfg = {});

/// optimize_weights_mse for spec.kind == mse, optimize_weights_general otherwise.
WeightVector optimize_weights(const PredictionSet& preds, const EvaluationSpec& spec, const CombinerConfig& cfg = {});

struct GridOracleResult {
    WeightVector weights;
    double objective = 0.0;
    // Upper bound on (grid objective - true minimum): Lipschitz constant of
    // the objective in each weight times half a grid step.
    double discretization_bound = 0.0;
};

inline constexpr std::size_t kGridOracleMaxInstances = 6;

/// Exhaustive search over the weight grid {0, r, 2r, ..., 1}^n. Testing aid;
/// refuses n > kGridOracleMaxInstances.
GridOracleResult grid_oracle(const PredictionSet& preds, const EvaluationSpec& spec, double resolution);

} // namespace hmc
