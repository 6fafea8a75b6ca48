#include "complementarity/metrics.hpp"

#include <algorithm>
#include <string>

#include "complementarity/errors.hpp"
#include "complementarity/objectives.hpp"

namespace hmc {

double c_across(const WeightVector& w) {
    const auto n = static_cast<double>(w.size());
    if (w.size() == 0) return 0.0;
    const Vector& wm = w.machine();
    const double mean = wm.sum() / n;
    const double var = (wm.array() - mean).square().sum() / n;
    return std::clamp(var, 0.0, 0.25);
}

double c_within(const WeightVector& w) {
    if (w.size() == 0) return 0.0;
    const auto n = static_cast<double>(w.size());
    const double gap = (w.human() - w.machine()).squaredNorm() / n;
    return std::clamp(1.0 - gap, 0.0, 1.0);
}

bool check_complementarity(double value_joint, double value_h, double value_m, Direction direction) {
    if (direction == Direction::minimize) return value_joint < std::min(value_h, value_m);
    return value_joint > std::max(value_h, value_m);
}

Vector joint_predictions(const PredictionSet& preds, const WeightVector& w) {
    if (w.size() != preds.size()) {
        throw StructuralError("weight vector has " + std::to_string(w.size()) + " entries, prediction set has " +
                              std::to_string(preds.size()));
    }
    return (w.human().array() * preds.pred_h().array() + w.machine().array() * preds.pred_m().array()).matrix();
}

ComplementarityReport summarize_report(const PredictionSet& preds, const WeightVector& w, const EvaluationSpec& spec) {
    const Vector joint = joint_predictions(preds, w);
    const Objective objective(spec, preds.size());

    ComplementarityReport report;
    report.n = preds.size();
    report.single_instance = preds.size() == 1;
    report.c_across = c_across(w);
    report.c_within = c_within(w);
    report.value_joint = objective(joint, preds.y());
    report.value_h = objective(preds.pred_h(), preds.y());
    report.value_m = objective(preds.pred_m(), preds.y());
    report.complementary = check_complementarity(report.value_joint, report.value_h, report.value_m, spec.direction);
    return report;
}

} // namespace hmc
