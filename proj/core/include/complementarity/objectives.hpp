#pragma once

#include <cstddef>
#include <vector>

#include "complementarity/types.hpp"

namespace hmc {

/// Rank coefficients derived from the derivative of a probability weighting
/// function with fixed point `a` and curvature `b`:
///
///   v_i = (3 - 3b) / (a^2 - a + 1) * (3 i^2 / n^2 - 2 (a + 1) i / n + a) + 1,  i = 1..n
///
/// b == 1 gives v_i == 1 for every i (plain expected loss).
struct VWeights {
    Vector values;
    double a = 0.5;
    double b = 1.0;
};

/// Throws InvalidConfigError naming (a, b, n, i) when some v_i < 0 and
/// `allow_negative` is false, or when a/b are out of range.
VWeights v_weights(double a, double b, std::size_t n, bool allow_negative = false);

/// Largest b with every v_i >= 0 in the continuum limit for fixed point a.
double max_nonnegative_b(double a);

double eval_mse(const Vector& preds, const Vector& y);

/// (1/n) sum_i v_i * loss_(i). Under RankMode::sorted loss_(i) is the i-th
/// smallest squared error (stable, ties by instance index).
double eval_rank_weighted(const Vector& preds, const Vector& y, const VWeights& vw,
                          RankMode mode = RankMode::sorted);

/// theta * eval_mse + (1 - theta) * eval_rank_weighted with v_weights(a, b, n).
double eval_blended(const Vector& preds, const Vector& y, const EvaluationSpec& spec);

/// Dispatches on spec.kind.
double evaluate(const EvaluationSpec& spec, const Vector& preds, const Vector& y);

/// Indices that sort `losses` ascending; equal losses keep index order.
std::vector<std::size_t> ascending_order(const Vector& losses);

Vector squared_losses(const Vector& preds, const Vector& y);

/// An evaluation function bound to a fixed sample size, with the rank
/// coefficients computed once. Used by the optimizers, which evaluate the
/// same objective many times.
class Objective {
public:
    Objective(const EvaluationSpec& spec, std::size_t n);

    double operator()(const Vector& preds, const Vector& y) const;
    double of_losses(const Vector& losses) const;

    /// Effective per-instance coefficient (theta + (1 - theta) v_rank(i)) / n
    /// with the ranking induced by `losses` held fixed.
    Vector instance_coefficients(const Vector& losses) const;

    /// Upper bound on |instance coefficient| over all rankings.
    double max_abs_coefficient() const;

    const EvaluationSpec& spec() const noexcept { return spec_; }
    std::size_t size() const noexcept { return n_; }
    bool is_separable() const noexcept { return v_.size() == 0; }

private:
    EvaluationSpec spec_;
    std::size_t n_;
    double mse_weight_;  // 1 for mse, 0 for rank_weighted, theta for blended
    Vector v_;           // empty when the rank term carries zero weight
};

} // namespace hmc
