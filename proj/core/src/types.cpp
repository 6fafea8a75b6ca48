#include "complementarity/types.hpp"

#include <cmath>
#include <string>
#include <unordered_set>
#include <utility>

#include "complementarity/errors.hpp"

namespace hmc {

namespace {

void require_finite(const Vector& v, const char* name) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) {
            throw StructuralError(std::string(name) + "[" + std::to_string(i) + "] is not finite");
        }
    }
}

} // namespace

PredictionSet::PredictionSet(std::vector<std::int64_t> instance_ids, Vector y, Vector pred_h, Vector pred_m)
    : ids_(std::move(instance_ids)), y_(std::move(y)), pred_h_(std::move(pred_h)), pred_m_(std::move(pred_m)) {
    const auto n = y_.size();
    if (n < 1) throw StructuralError("prediction set must contain at least one instance");
    if (static_cast<Eigen::Index>(ids_.size()) != n || pred_h_.size() != n || pred_m_.size() != n) {
        throw StructuralError("prediction set arrays differ in length: ids=" + std::to_string(ids_.size()) +
                              " y=" + std::to_string(n) + " pred_h=" + std::to_string(pred_h_.size()) +
                              " pred_m=" + std::to_string(pred_m_.size()));
    }
    std::unordered_set<std::int64_t> seen;
    seen.reserve(ids_.size());
    for (auto id : ids_) {
        if (!seen.insert(id).second) throw StructuralError("duplicate instance_id " + std::to_string(id));
    }
    require_finite(y_, "y");
    require_finite(pred_h_, "pred_h");
    require_finite(pred_m_, "pred_m");
}

PredictionSet PredictionSet::with_sequential_ids(Vector y, Vector pred_h, Vector pred_m) {
    std::vector<std::int64_t> ids(static_cast<std::size_t>(y.size()));
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<std::int64_t>(i);
    return PredictionSet(std::move(ids), std::move(y), std::move(pred_h), std::move(pred_m));
}

WeightVector::WeightVector(Vector w_h, Vector w_m) : w_h_(std::move(w_h)), w_m_(std::move(w_m)) {
    if (w_h_.size() != w_m_.size()) {
        throw StructuralError("weight vectors differ in length: w_h=" + std::to_string(w_h_.size()) +
                              " w_m=" + std::to_string(w_m_.size()));
    }
    for (Eigen::Index i = 0; i < w_h_.size(); ++i) {
        const double h = w_h_[i];
        const double m = w_m_[i];
        if (!(h >= 0.0 && h <= 1.0) || !(m >= 0.0 && m <= 1.0)) {
            throw InvalidConfigError("weight " + std::to_string(i) + " outside [0,1]");
        }
        if (std::abs(h + m - 1.0) > kSimplexTolerance) {
            throw InvalidConfigError("weights at " + std::to_string(i) + " do not sum to 1");
        }
    }
}

WeightVector WeightVector::from_human(Vector w_h) {
    Vector w_m = (1.0 - w_h.array()).matrix();
    return WeightVector(std::move(w_h), std::move(w_m));
}

WeightVector WeightVector::constant(std::size_t n, double w_h) {
    return from_human(Vector::Constant(static_cast<Eigen::Index>(n), w_h));
}

EvaluationSpec EvaluationSpec::mse() { return EvaluationSpec{}; }

EvaluationSpec EvaluationSpec::rank_weighted(double a, double b) {
    EvaluationSpec s;
    s.kind = ObjectiveKind::rank_weighted;
    s.a = a;
    s.b = b;
    s.theta = 0.0;
    return s;
}

EvaluationSpec EvaluationSpec::blended(double a, double b, double theta) {
    EvaluationSpec s;
    s.kind = ObjectiveKind::blended;
    s.a = a;
    s.b = b;
    s.theta = theta;
    return s;
}

void EvaluationSpec::validate() const {
    if (kind == ObjectiveKind::mse) return;
    if (!(a >= 0.0 && a <= 1.0)) throw InvalidConfigError("a must lie in [0,1], got " + std::to_string(a));
    if (!(b > 0.0) || !std::isfinite(b)) throw InvalidConfigError("b must be positive, got " + std::to_string(b));
    if (kind == ObjectiveKind::blended && !(theta >= 0.0 && theta <= 1.0)) {
        throw InvalidConfigError("theta must lie in [0,1], got " + std::to_string(theta));
    }
}

std::string_view to_string(Direction d) { return d == Direction::minimize ? "minimize" : "maximize"; }

std::string_view to_string(ObjectiveKind k) {
    switch (k) {
    case ObjectiveKind::mse: return "mse";
    case ObjectiveKind::rank_weighted: return "rank_weighted";
    case ObjectiveKind::blended: return "blended";
    }
    return "?";
}

std::string_view to_string(RankMode m) { return m == RankMode::sorted ? "sorted" : "fixed_index"; }

Direction parse_direction(std::string_view s) {
    if (s == "minimize") return Direction::minimize;
    if (s == "maximize") return Direction::maximize;
    throw InvalidConfigError("unknown direction '" + std::string(s) + "' (expected minimize|maximize)");
}

ObjectiveKind parse_objective_kind(std::string_view s) {
    if (s == "mse") return ObjectiveKind::mse;
    if (s == "rank_weighted") return ObjectiveKind::rank_weighted;
    if (s == "blended") return ObjectiveKind::blended;
    throw InvalidConfigError("unknown objective kind '" + std::string(s) + "' (expected mse|rank_weighted|blended)");
}

RankMode parse_rank_mode(std::string_view s) {
    if (s == "sorted") return RankMode::sorted;
    if (s == "fixed_index") return RankMode::fixed_index;
    throw InvalidConfigError("unknown rank mode '" + std::string(s) + "' (expected sorted|fixed_index)");
}

} // namespace hmc
