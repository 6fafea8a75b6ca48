#include "complementarity/fitting.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "complementarity/errors.hpp"
#include "complementarity/objectives.hpp"

namespace hmc {

namespace {

// Condition number above which the normal matrix counts as singular, and
// above which it is still rejected after the ridge term.
constexpr double kSingularCondition = 1e12;
constexpr double kRejectCondition = 1e15;

void check_view(const Matrix& X, const FeatureView& view) {
    for (auto j : view.indices) {
        if (j >= static_cast<std::size_t>(X.cols())) {
            throw StructuralError("feature column " + std::to_string(j) + " missing (matrix has " +
                                  std::to_string(X.cols()) + " columns)");
        }
    }
}

Matrix design_matrix(const Matrix& X, const FeatureView& view, bool intercept) {
    check_view(X, view);
    const auto k = static_cast<Eigen::Index>(view.size());
    Matrix Z(X.rows(), k + (intercept ? 1 : 0));
    for (Eigen::Index c = 0; c < k; ++c) Z.col(c) = X.col(static_cast<Eigen::Index>(view.indices[static_cast<std::size_t>(c)]));
    if (intercept) Z.col(k).setOnes();
    return Z;
}

double condition_of(const Matrix& A) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(A, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    const double lmax = es.eigenvalues().maxCoeff();
    if (!(lmin > 0.0)) return std::numeric_limits<double>::infinity();
    return lmax / lmin;
}

// Solves (Z' W Z) beta = Z' W y; `weights == nullptr` means W = I.
Vector solve_normal_equations(const Matrix& Z, const Vector& y, const Vector* weights, double ridge) {
    if (Z.cols() == 0) return Vector(0);
    Matrix A;
    Vector rhs;
    if (weights == nullptr) {
        A = Z.transpose() * Z;
        rhs = Z.transpose() * y;
    } else {
        const Matrix WZ = weights->asDiagonal() * Z;
        A = Z.transpose() * WZ;
        rhs = WZ.transpose() * y;
    }
    double cond = condition_of(A);
    if (cond > kSingularCondition) {
        A.diagonal().array() += ridge;
        cond = condition_of(A);
        if (!(cond <= kRejectCondition)) {
            std::ostringstream msg;
            msg << "normal equations are rank deficient after ridge " << ridge << " (condition estimate " << cond
                << ")";
            throw IllConditionedError(msg.str(), cond);
        }
    }
    return A.ldlt().solve(rhs);
}

LinearPolicy to_policy(const Vector& beta, const FeatureView& view, bool intercept) {
    LinearPolicy p;
    p.view = view;
    const auto k = static_cast<Eigen::Index>(view.size());
    p.coefficients = beta.head(k);
    p.intercept = intercept ? beta[k] : 0.0;
    if (!p.coefficients.allFinite() || !std::isfinite(p.intercept)) {
        throw IllConditionedError("least-squares solution is not finite", std::numeric_limits<double>::infinity());
    }
    return p;
}

void check_inputs(const Matrix& X, const Vector& y, const FeatureView& view, const FitConfig& cfg) {
    cfg.validate();
    if (X.rows() != y.size()) {
        throw StructuralError("feature matrix has " + std::to_string(X.rows()) + " rows, target has " +
                              std::to_string(y.size()));
    }
    const auto needed = view.size() + (cfg.include_intercept ? 1 : 0);
    if (static_cast<std::size_t>(X.rows()) < needed) {
        throw StructuralError("need at least " + std::to_string(needed) + " rows, got " + std::to_string(X.rows()));
    }
    if (!X.allFinite() || !y.allFinite()) throw StructuralError("fit inputs contain non-finite values");
}

} // namespace

void FitConfig::validate() const {
    if (max_outer_iters < 1) throw InvalidConfigError("fit.max_outer_iters must be >= 1");
    if (!(convergence_tol > 0.0)) throw InvalidConfigError("fit.convergence_tol must be positive");
    if (!(ridge_epsilon >= 0.0)) throw InvalidConfigError("fit.ridge_epsilon must be >= 0");
}

LinearPolicy fit_ols(const Matrix& X, const Vector& y, const FeatureView& view, const FitConfig& cfg) {
    check_inputs(X, y, view, cfg);
    const Matrix Z = design_matrix(X, view, cfg.include_intercept);
    return to_policy(solve_normal_equations(Z, y, nullptr, cfg.ridge_epsilon), view, cfg.include_intercept);
}

LinearPolicy fit_ols(const Matrix& X, const Vector& y, const FitConfig& cfg) {
    return fit_ols(X, y, FeatureView::all(static_cast<std::size_t>(X.cols())), cfg);
}

Vector predict(const LinearPolicy& policy, const Matrix& X) {
    check_view(X, policy.view);
    if (static_cast<std::size_t>(policy.coefficients.size()) != policy.view.size()) {
        throw StructuralError("policy has " + std::to_string(policy.coefficients.size()) + " coefficients for " +
                              std::to_string(policy.view.size()) + " features");
    }
    Vector out = Vector::Constant(X.rows(), policy.intercept);
    for (std::size_t c = 0; c < policy.view.size(); ++c) {
        out += policy.coefficients[static_cast<Eigen::Index>(c)] * X.col(static_cast<Eigen::Index>(policy.view.indices[c]));
    }
    return out;
}

double rank_weighted_objective(const LinearPolicy& policy, const Matrix& X, const Vector& y, double a, double b,
                               RankMode mode, bool allow_negative) {
    const auto vw = v_weights(a, b, static_cast<std::size_t>(y.size()), allow_negative);
    return eval_rank_weighted(predict(policy, X), y, vw, mode);
}

RankWeightedFit fit_rank_weighted(const Matrix& X, const Vector& y, const FeatureView& view, double a, double b,
                                  const FitConfig& cfg, bool allow_negative) {
    check_inputs(X, y, view, cfg);
    const auto n = static_cast<std::size_t>(y.size());
    const Vector v = v_weights(a, b, n, allow_negative).values;
    const Matrix Z = design_matrix(X, view, cfg.include_intercept);

    auto objective_of = [&](const Vector& beta) {
        const Vector losses = (Z * beta - y).array().square().matrix();
        double total = 0.0;
        if (cfg.rank_mode == RankMode::fixed_index) {
            total = v.dot(losses);
        } else {
            const auto order = ascending_order(losses);
            for (std::size_t k = 0; k < n; ++k) total += v[static_cast<Eigen::Index>(k)] * losses[static_cast<Eigen::Index>(order[k])];
        }
        return total / static_cast<double>(n);
    };

    RankWeightedFit fit;
    Vector current = solve_normal_equations(Z, y, nullptr, cfg.ridge_epsilon);
    double current_obj = objective_of(current);
    Vector best = current;
    double best_obj = current_obj;

    // Unit weights: the weighted problem is the OLS problem itself.
    if ((v.array() == 1.0).all()) {
        fit.policy = to_policy(best, view, cfg.include_intercept);
        fit.objective = best_obj;
        fit.converged = true;
        return fit;
    }

    Vector weights(static_cast<Eigen::Index>(n));
    for (std::size_t it = 1; it <= cfg.max_outer_iters; ++it) {
        if (cfg.rank_mode == RankMode::fixed_index) {
            weights = v;
        } else {
            const Vector losses = (Z * current - y).array().square().matrix();
            const auto order = ascending_order(losses);
            for (std::size_t k = 0; k < n; ++k) weights[static_cast<Eigen::Index>(order[k])] = v[static_cast<Eigen::Index>(k)];
        }
        const Vector candidate = solve_normal_equations(Z, y, &weights, cfg.ridge_epsilon);
        const double candidate_obj = objective_of(candidate);
        const double improvement = current_obj - candidate_obj;

        if (candidate_obj < best_obj) {
            best = candidate;
            best_obj = candidate_obj;
        }
        fit.trajectory.push_back(best_obj);
        fit.iterations = it;
        current = candidate;
        current_obj = candidate_obj;

        if (improvement < cfg.convergence_tol) {
            // A rise in the objective means the ranking is cycling.
            fit.converged = improvement > -cfg.convergence_tol;
            break;
        }
    }

    fit.policy = to_policy(best, view, cfg.include_intercept);
    fit.objective = best_obj;
    return fit;
}

} // namespace hmc
