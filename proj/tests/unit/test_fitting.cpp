#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "complementarity/errors.hpp"
#include "complementarity/fitting.hpp"
#include "complementarity/objectives.hpp"
#include "complementarity/synthgen.hpp"
#include "oracles.hpp"

using namespace hmc;

namespace {

Dataset make_data(std::size_t n, double noise, std::uint64_t seed, std::size_t d = 10) {
    DgpConfig cfg;
    cfg.d = d;
    cfg.n = n;
    cfg.noise_sd = noise;
    cfg.seed = seed;
    return generate_dataset(cfg);
}

} // namespace

TEST_CASE("one-feature least squares") {
    Matrix X(2, 1);
    X << 1, 2;
    Vector y(2);
    y << 2, 4;
    const auto p = fit_ols(X, y);
    CHECK(p.coefficients[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(p.intercept == 0.0);
}

TEST_CASE("noiseless data recovers beta") {
    const auto data = make_data(200, 0.0, 5);
    const auto p = fit_ols(data.features, data.target);
    CHECK((p.coefficients - Vector::Ones(10)).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("noisy data: coefficients near beta, residuals orthogonal") {
    const auto data = make_data(8000, 1.0, 11);
    const auto p = fit_ols(data.features, data.target);
    CHECK((p.coefficients - Vector::Ones(10)).cwiseAbs().maxCoeff() <= 0.05);
    const Vector resid = data.target - predict(p, data.features);
    const Vector ortho = data.features.transpose() * resid / 8000.0;
    CHECK(ortho.cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("agrees with a QR least-squares oracle on feature subsets") {
    const auto data = make_data(500, 1.0, 13);
    const auto view = FeatureView::of({0, 3, 4, 8}, 10);
    const auto p = fit_ols(data.features, data.target, view);
    Matrix sub(500, 4);
    for (std::size_t k = 0; k < 4; ++k) sub.col(static_cast<Eigen::Index>(k)) = data.features.col(static_cast<Eigen::Index>(view.indices[k]));
    const Vector ref = oracle::least_squares_qr(sub, data.target);
    CHECK((p.coefficients - ref).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("intercept") {
    const auto data = make_data(300, 0.0, 17, 3);
    const Vector shifted = data.target.array() + 2.5;
    FitConfig cfg;
    cfg.include_intercept = true;
    const auto p = fit_ols(data.features, shifted, cfg);
    CHECK(p.intercept == doctest::Approx(2.5).epsilon(1e-9));
    CHECK((p.coefficients - Vector::Ones(3)).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("singular designs get a ridge term; hopeless ones throw") {
    Matrix X(4, 2);
    X << 1, 0, 2, 0, 3, 0, 4, 0;
    Vector y(4);
    y << 1, 2, 3, 4;
    const auto p = fit_ols(X, y);
    CHECK(p.coefficients.allFinite());
    CHECK(p.coefficients[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(p.coefficients[1]) <= 1e-6);

    FitConfig no_ridge;
    no_ridge.ridge_epsilon = 0.0;
    try {
        fit_ols(X, y, no_ridge);
        FAIL("expected IllConditionedError");
    } catch (const IllConditionedError& e) {
        CHECK(e.condition_estimate() > 1e12);
    }
}

TEST_CASE("predict") {
    LinearPolicy p;
    p.coefficients = Vector(3);
    p.coefficients << 1.0, -2.0, 0.5;
    p.view = FeatureView::of({0, 2, 3}, 4);
    Matrix X(2, 4);
    X << 1, 100, 2, 4, 0, 100, 1, -2;
    const Vector out = predict(p, X);
    CHECK(out[0] == doctest::Approx(1.0 - 4.0 + 2.0));
    CHECK(out[1] == doctest::Approx(0.0 - 2.0 - 1.0));

    const Matrix X2 = Matrix::Ones(2, 4) * 3.0;
    CHECK((predict(p, X + X2) - (predict(p, X) + predict(p, X2))).cwiseAbs().maxCoeff() <= 1e-12);

    CHECK_THROWS_AS(predict(p, Matrix::Ones(2, 3)), StructuralError);
}

TEST_CASE("rank-weighted fit with b = 1 is the OLS fit") {
    const auto data = make_data(400, 1.0, 19);
    const auto view = FeatureView::all(10);
    const auto ols = fit_ols(data.features, data.target, view);
    for (double a : {0.0, 0.5, 1.0}) {
        const auto rw = fit_rank_weighted(data.features, data.target, view, a, 1.0);
        CHECK((rw.policy.coefficients - ols.coefficients).cwiseAbs().maxCoeff() <= 1e-8);
        CHECK(rw.converged);
    }
}

TEST_CASE("rank-weighted fit on noiseless data reaches zero loss") {
    const auto data = make_data(100, 0.0, 23, 4);
    const auto rw = fit_rank_weighted(data.features, data.target, FeatureView::all(4), 0.5, 0.5);
    CHECK(rw.objective <= 1e-12);
}

TEST_CASE("rank-weighted fit never loses to OLS on its own objective") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto data = make_data(50, 1.0, 100 + seed, 2);
        const auto view = FeatureView::all(2);
        for (double b : {0.25, 0.5, 1.5}) {
            const auto rw = fit_rank_weighted(data.features, data.target, view, 0.5, b);
            const auto ols = fit_ols(data.features, data.target, view);
            const double ols_obj = rank_weighted_objective(ols, data.features, data.target, 0.5, b);
            CHECK(rw.objective <= ols_obj + 1e-12);
            CHECK(rw.objective ==
                  doctest::Approx(rank_weighted_objective(rw.policy, data.features, data.target, 0.5, b)));
            REQUIRE(!rw.trajectory.empty());
            for (std::size_t k = 1; k < rw.trajectory.size(); ++k) {
                CHECK(rw.trajectory[k] <= rw.trajectory[k - 1]);
            }
        }
    }
}

TEST_CASE("rank-weighted fit rejects negative weights unless allowed") {
    const auto data = make_data(50, 1.0, 29, 2);
    CHECK_THROWS_AS(fit_rank_weighted(data.features, data.target, FeatureView::all(2), 0.5, 2.0), InvalidConfigError);
    const auto rw = fit_rank_weighted(data.features, data.target, FeatureView::all(2), 0.5, 2.0, {}, true);
    CHECK(rw.policy.coefficients.allFinite());
}

TEST_CASE("FitConfig validation") {
    FitConfig cfg;
    cfg.max_outer_iters = 0;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfigError);
    cfg = {};
    cfg.convergence_tol = -1.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfigError);
}
