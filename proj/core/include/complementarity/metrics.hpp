#pragma once

#include "complementarity/types.hpp"

namespace hmc {

/// Across-instance complementarity: population variance of w_m across
/// instances (identical to the variance of w_h). Range [0, 0.25].
double c_across(const WeightVector& w);

/// Within-instance complementarity: 1 - (1/n) sum_i (w_h[i] - w_m[i])^2.
/// 1 iff every weight is 0.5, 0 iff every weight is binary.
double c_within(const WeightVector& w);

/// Strict improvement over both single-agent policies under `direction`.
/// A tie with either agent is not complementarity.
bool check_complementarity(double value_joint, double value_h, double value_m, Direction direction);

/// w_h * pred_h + w_m * pred_m, instance-wise.
Vector joint_predictions(const PredictionSet& preds, const WeightVector& w);

/// Scores the joint, human-only and machine-only policies under `spec`
/// and fills every report field.
ComplementarityReport summarize_report(const PredictionSet& preds, const WeightVector& w, const EvaluationSpec& spec);

} // namespace hmc
