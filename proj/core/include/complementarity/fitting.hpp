#pragma once

#include <cstddef>
#include <vector>

#include "complementarity/synthgen.hpp"
#include "complementarity/types.hpp"

namespace hmc {

/// y_hat = X[:, view] * coefficients + intercept.
struct LinearPolicy {
    Vector coefficients;
    double intercept = 0.0;
    FeatureView view;
};

struct FitConfig {
    bool include_intercept = false;
    std::size_t max_outer_iters = 100;
    double convergence_tol = 1e-8;
    // Added to the normal-equation diagonal only when the system is singular.
    double ridge_epsilon = 1e-10;
    RankMode rank_mode = RankMode::sorted;

    void validate() const;
    bool operator==(const FitConfig&) const = default;
};

/// Least-squares policy on the columns in `view`.
/// Throws IllConditionedError when the system stays singular after the
/// ridge term is added.
LinearPolicy fit_ols(const Matrix& X, const Vector& y, const FeatureView& view, const FitConfig& cfg = {});

/// fit_ols over every column of X.
LinearPolicy fit_ols(const Matrix& X, const Vector& y, const FitConfig& cfg = {});

/// Throws StructuralError when X lacks a column the policy reads.
Vector predict(const LinearPolicy& policy, const Matrix& X);

struct RankWeightedFit {
    LinearPolicy policy;
    double objective = 0.0;  // rank-weighted loss of `policy` on the training data
    bool converged = false;
    std::size_t iterations = 0;
    // Best objective seen after each outer iteration (non-increasing).
    std::vector<double> trajectory;
};

/// Linear policy for the rank-weighted squared loss
/// (1/n) sum_i v_i loss_(i) with v = v_weights(a, b, n).
///
/// Alternates between ranking the residual losses of the current policy
/// and solving the weighted least-squares problem those ranks induce,
/// starting from the OLS fit. Stops when the objective improves by less
/// than cfg.convergence_tol; returns the best iterate visited. Running out
/// of iterations sets `converged = false` rather than throwing.
RankWeightedFit fit_rank_weighted(const Matrix& X, const Vector& y, const FeatureView& view, double a, double b,
                                  const FitConfig& cfg = {}, bool allow_negative = false);

/// Rank-weighted loss of an arbitrary policy, for comparing fits.
double rank_weighted_objective(const LinearPolicy& policy, const Matrix& X, const Vector& y, double a, double b,
                               RankMode mode = RankMode::sorted, bool allow_negative = false);

} // namespace hmc
