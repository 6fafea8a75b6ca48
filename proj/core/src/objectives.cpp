#include "complementarity/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "complementarity/errors.hpp"

namespace hmc {

VWeights v_weights(double a, double b, std::size_t n, bool allow_negative) {
    if (n < 1) throw InvalidConfigError("v_weights requires n >= 1");
    if (!(a >= 0.0 && a <= 1.0)) throw InvalidConfigError("v_weights: a must lie in [0,1], got " + std::to_string(a));
    if (!(b > 0.0) || !std::isfinite(b)) throw InvalidConfigError("v_weights: b must be positive, got " + std::to_string(b));

    const double scale = (3.0 - 3.0 * b) / (a * a - a + 1.0);
    const double nd = static_cast<double>(n);
    VWeights out;
    out.a = a;
    out.b = b;
    out.values.resize(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
        const double i = static_cast<double>(k + 1);
        const double t = i / nd;
        const double v = scale * (3.0 * t * t - 2.0 * (a + 1.0) * t + a) + 1.0;
        if (v < 0.0 && !allow_negative) {
            std::ostringstream msg;
            msg << "negative rank weight v_" << (k + 1) << " = " << v << " for a=" << a << " b=" << b << " n=" << n
                << " (probability weighting must be monotone; pass allow_negative to override)";
            throw InvalidConfigError(msg.str());
        }
        out.values[static_cast<Eigen::Index>(k)] = v;
    }
    return out;
}

double max_nonnegative_b(double a) {
    // The rank quadratic q(t) = 3t^2 - 2(a+1)t + a on [0,1]: q(0) = a,
    // q(1) = 1 - a, vertex value a - (a+1)^2/3. For b > 1 the scale is
    // negative, so the binding constraint is the largest q.
    const double q_max = std::max(a, 1.0 - a);
    const double c = a * a - a + 1.0;
    // 1 + (3 - 3b)/c * q_max >= 0  <=>  b <= 1 + c / (3 q_max)
    if (q_max <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 + c / (3.0 * q_max);
}

Vector squared_losses(const Vector& preds, const Vector& y) {
    if (preds.size() != y.size()) {
        throw StructuralError("prediction/target length mismatch: " + std::to_string(preds.size()) + " vs " +
                              std::to_string(y.size()));
    }
    return (preds - y).array().square().matrix();
}

double eval_mse(const Vector& preds, const Vector& y) {
    const Vector losses = squared_losses(preds, y);
    if (losses.size() == 0) throw StructuralError("eval_mse on empty input");
    return losses.sum() / static_cast<double>(losses.size());
}

std::vector<std::size_t> ascending_order(const Vector& losses) {
    std::vector<std::size_t> order(static_cast<std::size_t>(losses.size()));
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        return losses[static_cast<Eigen::Index>(l)] < losses[static_cast<Eigen::Index>(r)];
    });
    return order;
}

namespace {

double rank_weighted_sum(const Vector& losses, const Vector& v, RankMode mode) {
    const auto n = losses.size();
    double total = 0.0;
    if (mode == RankMode::fixed_index) {
        for (Eigen::Index i = 0; i < n; ++i) total += v[i] * losses[i];
    } else {
        const auto order = ascending_order(losses);
        for (Eigen::Index k = 0; k < n; ++k) total += v[k] * losses[static_cast<Eigen::Index>(order[static_cast<std::size_t>(k)])];
    }
    return total / static_cast<double>(n);
}

} // namespace

double eval_rank_weighted(const Vector& preds, const Vector& y, const VWeights& vw, RankMode mode) {
    const Vector losses = squared_losses(preds, y);
    if (losses.size() != vw.values.size()) {
        throw StructuralError("rank weights have length " + std::to_string(vw.values.size()) + ", expected " +
                              std::to_string(losses.size()));
    }
    if (losses.size() == 0) throw StructuralError("eval_rank_weighted on empty input");
    return rank_weighted_sum(losses, vw.values, mode);
}

double eval_blended(const Vector& preds, const Vector& y, const EvaluationSpec& spec) {
    if (spec.kind != ObjectiveKind::blended) throw InvalidConfigError("eval_blended requires a blended spec");
    spec.validate();
    const auto vw = v_weights(spec.a, spec.b, static_cast<std::size_t>(y.size()), spec.allow_negative);
    return spec.theta * eval_mse(preds, y) + (1.0 - spec.theta) * eval_rank_weighted(preds, y, vw, spec.rank_mode);
}

double evaluate(const EvaluationSpec& spec, const Vector& preds, const Vector& y) {
    switch (spec.kind) {
    case ObjectiveKind::mse: return eval_mse(preds, y);
    case ObjectiveKind::rank_weighted: {
        spec.validate();
        const auto vw = v_weights(spec.a, spec.b, static_cast<std::size_t>(y.size()), spec.allow_negative);
        return eval_rank_weighted(preds, y, vw, spec.rank_mode);
    }
    case ObjectiveKind::blended: return eval_blended(preds, y, spec);
    }
    throw InvalidConfigError("unknown objective kind");
}

Objective::Objective(const EvaluationSpec& spec, std::size_t n) : spec_(spec), n_(n) {
    if (n < 1) throw StructuralError("objective requires n >= 1");
    spec_.validate();
    switch (spec_.kind) {
    case ObjectiveKind::mse: mse_weight_ = 1.0; break;
    case ObjectiveKind::rank_weighted: mse_weight_ = 0.0; break;
    case ObjectiveKind::blended: mse_weight_ = spec_.theta; break;
    }
    if (mse_weight_ < 1.0) v_ = v_weights(spec_.a, spec_.b, n, spec_.allow_negative).values;
}

double Objective::of_losses(const Vector& losses) const {
    if (static_cast<std::size_t>(losses.size()) != n_) {
        throw StructuralError("objective bound to n=" + std::to_string(n_) + " got " + std::to_string(losses.size()));
    }
    const double nd = static_cast<double>(n_);
    if (v_.size() == 0) return losses.sum() / nd;
    const double rank_term = rank_weighted_sum(losses, v_, spec_.rank_mode);
    if (mse_weight_ == 0.0) return rank_term;
    return mse_weight_ * (losses.sum() / nd) + (1.0 - mse_weight_) * rank_term;
}

double Objective::operator()(const Vector& preds, const Vector& y) const { return of_losses(squared_losses(preds, y)); }

Vector Objective::instance_coefficients(const Vector& losses) const {
    const double nd = static_cast<double>(n_);
    Vector c = Vector::Constant(static_cast<Eigen::Index>(n_), mse_weight_ / nd);
    if (v_.size() == 0) return c;
    const double rank_share = (1.0 - mse_weight_) / nd;
    if (spec_.rank_mode == RankMode::fixed_index) {
        c.array() += rank_share * v_.array();
        return c;
    }
    const auto order = ascending_order(losses);
    for (std::size_t k = 0; k < order.size(); ++k) {
        c[static_cast<Eigen::Index>(order[k])] += rank_share * v_[static_cast<Eigen::Index>(k)];
    }
    return c;
}

double Objective::max_abs_coefficient() const {
    const double nd = static_cast<double>(n_);
    if (v_.size() == 0) return mse_weight_ / nd;
    return (mse_weight_ + (1.0 - mse_weight_) * v_.cwiseAbs().maxCoeff()) / nd;
}

} // namespace hmc
