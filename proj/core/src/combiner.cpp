#include "complementarity/combiner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "complementarity/errors.hpp"
#include "complementarity/objectives.hpp"
#include "complementarity/random.hpp"

namespace hmc {

std::string_view to_string(TieBreak t) {
    switch (t) {
    case TieBreak::machine: return "machine";
    case TieBreak::human: return "human";
    case TieBreak::half: return "half";
    }
    return "?";
}

TieBreak parse_tie_break(std::string_view s) {
    if (s == "machine") return TieBreak::machine;
    if (s == "human") return TieBreak::human;
    if (s == "half") return TieBreak::half;
    throw InvalidConfigError("unknown tie break '" + std::string(s) + "' (expected machine|human|half)");
}

double tie_weight(TieBreak t) noexcept {
    switch (t) {
    case TieBreak::machine: return 0.0;
    case TieBreak::human: return 1.0;
    case TieBreak::half: return 0.5;
    }
    return 0.0;
}

namespace {

bool divides_one(double resolution) {
    if (!(resolution > 0.0) || resolution > 1.0) return false;
    const double steps = std::round(1.0 / resolution);
    return std::abs(steps * resolution - 1.0) <= 1e-12;
}

// Per-instance pieces of loss_i(w) = (w * gap_i + offset_i)^2 with
// gap = pred_h - pred_m and offset = pred_m - y.
struct Bracket {
    Vector gap;
    Vector offset;

    explicit Bracket(const PredictionSet& p) : gap(p.pred_h() - p.pred_m()), offset(p.pred_m() - p.y()) {}

    Vector losses(const Vector& w) const { return (w.array() * gap.array() + offset.array()).square().matrix(); }
};

} // namespace

void CombinerConfig::validate() const {
    if (max_iters < 1) throw InvalidConfigError("combiner.max_iters must be >= 1");
    if (!(tol > 0.0)) throw InvalidConfigError("combiner.tol must be positive");
    if (restarts < 1) throw InvalidConfigError("combiner.restarts must be >= 1");
    if (!divides_one(grid_resolution)) {
        throw InvalidConfigError("combiner.grid_resolution must divide 1 evenly, got " + std::to_string(grid_resolution));
    }
    if (!(step_size > 0.0)) throw InvalidConfigError("combiner.step_size must be positive");
}

double closed_form_weight(double pred_h, double pred_m, double y, const CombinerConfig& cfg) {
    if (pred_h == pred_m) return tie_weight(cfg.tie_break);
    return std::clamp((y - pred_m) / (pred_h - pred_m), 0.0, 1.0);
}

WeightVector optimize_weights_mse(const PredictionSet& preds, const CombinerConfig& cfg) {
    Vector w(static_cast<Eigen::Index>(preds.size()));
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        w[i] = closed_form_weight(preds.pred_h()[i], preds.pred_m()[i], preds.y()[i], cfg);
    }
    return WeightVector::from_human(std::move(w));
}

namespace {

struct Candidate {
    Vector w;
    double value = std::numeric_limits<double>::infinity();
};

// One exact pass of the frozen-rank update.
Vector frozen_rank_step(const Vector& coef, const PredictionSet& p, const Bracket& br, const CombinerConfig& cfg) {
    const double tie = tie_weight(cfg.tie_break);
    Vector w(coef.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (coef[i] > 0.0) {
            w[i] = closed_form_weight(p.pred_h()[i], p.pred_m()[i], p.y()[i], cfg);
        } else if (coef[i] < 0.0 && br.gap[i] != 0.0) {
            const double at_machine = br.offset[i] * br.offset[i];
            const double at_human = (br.gap[i] + br.offset[i]) * (br.gap[i] + br.offset[i]);
            if (at_human > at_machine) {
                w[i] = 1.0;
            } else if (at_machine > at_human) {
                w[i] = 0.0;
            } else {
                w[i] = cfg.tie_break == TieBreak::human ? 1.0 : 0.0;
            }
        } else {
            w[i] = tie;
        }
    }
    return w;
}

// Projected gradient on the box with the ranking re-derived at each point;
// backtracking keeps every accepted step a strict improvement.
Candidate projected_gradient_polish(Candidate start, const Objective& objective, const Bracket& br,
                                    const CombinerConfig& cfg) {
    const double n = static_cast<double>(start.w.size());
    Candidate cur = std::move(start);
    for (std::size_t it = 0; it < cfg.max_iters; ++it) {
        const Vector losses = br.losses(cur.w);
        const Vector coef = objective.instance_coefficients(losses);
        const Vector residual = (cur.w.array() * br.gap.array() + br.offset.array()).matrix();
        const Vector grad = (n * 2.0 * coef.array() * residual.array() * br.gap.array()).matrix();
        if (grad.cwiseAbs().maxCoeff() == 0.0) break;

        double step = cfg.step_size;
        bool accepted = false;
        Candidate trial;
        for (int k = 0; k < 30; ++k) {
            trial.w = (cur.w - step * grad).cwiseMax(0.0).cwiseMin(1.0);
            trial.value = objective.of_losses(br.losses(trial.w));
            if (trial.value < cur.value) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
        const double improvement = cur.value - trial.value;
        cur = std::move(trial);
        if (improvement < cfg.tol) break;
    }
    return cur;
}

} // namespace

CombinerResult solve_weights_general(const PredictionSet& preds, const EvaluationSpec& spec, const CombinerConfig& cfg) {
    cfg.validate();
    const auto n = preds.size();
    const auto ni = static_cast<Eigen::Index>(n);
    const Objective objective(spec, n);
    const Bracket br(preds);

    std::vector<Vector> starts;
    starts.push_back(Vector::Zero(ni));
    starts.push_back(Vector::Ones(ni));
    starts.push_back(Vector::Constant(ni, 0.5));
    starts.push_back(optimize_weights_mse(preds, cfg).human());
    Rng rng(derive_seed(cfg.seed, Stream::combiner));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t r = 0; r < cfg.restarts; ++r) {
        Vector w(ni);
        for (Eigen::Index i = 0; i < ni; ++i) w[i] = unit(rng);
        starts.push_back(std::move(w));
    }

    Candidate best;
    std::size_t best_start = 0;
    std::size_t total_iters = 0;
    bool polished = false;

    auto consider = [&](const Candidate& c, std::size_t start_index) {
        if (c.value < best.value) {
            best = c;
            best_start = start_index;
        }
    };

    for (std::size_t s = 0; s < starts.size(); ++s) {
        Candidate cur{starts[s], objective.of_losses(br.losses(starts[s]))};
        Candidate local = cur;
        bool cycled = false;
        for (std::size_t it = 0; it < cfg.max_iters; ++it) {
            ++total_iters;
            const Vector coef = objective.instance_coefficients(br.losses(cur.w));
            Candidate next{frozen_rank_step(coef, preds, br, cfg), 0.0};
            next.value = objective.of_losses(br.losses(next.w));
            if (next.value < local.value) local = next;
            const double improvement = cur.value - next.value;
            const bool fixed_point = next.w == cur.w;
            cur = std::move(next);
            if (fixed_point) break;
            if (improvement < cfg.tol) {
                cycled = improvement < -cfg.tol;
                break;
            }
            if (it + 1 == cfg.max_iters) cycled = true;
        }
        if (cycled && !objective.is_separable()) {
            local = projected_gradient_polish(std::move(local), objective, br, cfg);
            polished = true;
        }
        consider(local, s);
    }

    // Both constant policies are feasible; the first two starts are exactly
    // these vectors, so the comparison is already part of the selection.
    // Instances where the agents agree do not affect the loss.
    const double tie = tie_weight(cfg.tie_break);
    for (Eigen::Index i = 0; i < ni; ++i) {
        if (br.gap[i] == 0.0) best.w[i] = tie;
    }
    CombinerResult out{WeightVector::from_human(best.w), best.value, best_start, total_iters, polished};
    return out;
}

WeightVector optimize_weights_general(const PredictionSet& preds, const EvaluationSpec& spec, const CombinerConfig& cfg) {
    return solve_weights_general(preds, spec, cfg).weights;
}

WeightVector optimize_weights(const PredictionSet& preds, const EvaluationSpec& spec, const CombinerConfig& cfg) {
    if (spec.kind == ObjectiveKind::mse) return optimize_weights_mse(preds, cfg);
    return optimize_weights_general(preds, spec, cfg);
}

GridOracleResult grid_oracle(const PredictionSet& preds, const EvaluationSpec& spec, double resolution) {
    const auto n = preds.size();
    if (n > kGridOracleMaxInstances) {
        throw InvalidConfigError("grid_oracle refuses n = " + std::to_string(n) + " (limit " +
                                 std::to_string(kGridOracleMaxInstances) + "; cost grows as resolution^-n)");
    }
    if (!divides_one(resolution)) {
        throw InvalidConfigError("grid resolution must divide 1 evenly, got " + std::to_string(resolution));
    }
    const auto steps = static_cast<std::size_t>(std::llround(1.0 / resolution));
    const auto ni = static_cast<Eigen::Index>(n);
    const Objective objective(spec, n);
    const Bracket br(preds);

    std::vector<std::size_t> idx(n, 0);
    Vector w(ni);
    Vector best_w = Vector::Zero(ni);
    double best_value = std::numeric_limits<double>::infinity();
    while (true) {
        for (std::size_t i = 0; i < n; ++i) {
            w[static_cast<Eigen::Index>(i)] = static_cast<double>(idx[i]) / static_cast<double>(steps);
        }
        const double value = objective.of_losses(br.losses(w));
        if (value < best_value) {
            best_value = value;
            best_w = w;
        }
        std::size_t pos = 0;
        while (pos < n && idx[pos] == steps) idx[pos++] = 0;
        if (pos == n) break;
        ++idx[pos];
    }

    double lipschitz_sum = 0.0;
    for (Eigen::Index i = 0; i < ni; ++i) {
        const double slope = 2.0 * std::abs(br.gap[i]) *
                             std::max(std::abs(br.offset[i]), std::abs(br.gap[i] + br.offset[i]));
        lipschitz_sum += slope;
    }
    GridOracleResult out{WeightVector::from_human(best_w), best_value,
                         objective.max_abs_coefficient() * lipschitz_sum * resolution / 2.0};
    return out;
}

} // namespace hmc
