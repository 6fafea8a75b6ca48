#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <string>

#include "complementarity/errors.hpp"
#include "complementarity/objectives.hpp"
#include "oracles.hpp"

using namespace hmc;
using oracle::to_eigen;

TEST_CASE("v_weights: b = 1 gives all ones") {
    const auto vw = v_weights(0.5, 1.0, 4);
    REQUIRE(vw.values.size() == 4);
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(vw.values[i] == 1.0);
    CHECK((v_weights(0.13, 1.0, 17).values.array() == 1.0).all());
}

TEST_CASE("v_weights: hand-evaluated values") {
    const auto vw = v_weights(0.5, 0.5, 2);
    CHECK(vw.values[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(vw.values[1] == doctest::Approx(2.0).epsilon(1e-15));

    // tests/oracles/frozen_values.py
    const auto v5 = v_weights(0.3, 0.7, 5);
    const double expected[] = {0.8860759493670886, 0.7037974683544302, 0.7949367088607595, 1.159493670886076,
                               1.79746835443038};
    for (int i = 0; i < 5; ++i) CHECK(v5.values[i] == doctest::Approx(expected[i]).epsilon(1e-14));
}

TEST_CASE("v_weights: negative weights are rejected by default") {
    try {
        v_weights(0.5, 2.0, 2);
        FAIL("expected an error");
    } catch (const InvalidConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("v_2") != std::string::npos);
        CHECK(msg.find("b=2") != std::string::npos);
        CHECK(msg.find("n=2") != std::string::npos);
    }
    const auto vw = v_weights(0.5, 2.0, 2, /*allow_negative=*/true);
    CHECK(vw.values[1] == doctest::Approx(-1.0));
    CHECK_THROWS_AS(v_weights(0.5, 1.0, 0), InvalidConfigError);
    CHECK_THROWS_AS(v_weights(-0.1, 1.0, 3), InvalidConfigError);
    CHECK_THROWS_AS(v_weights(0.5, -1.0, 3), InvalidConfigError);
}

TEST_CASE("max_nonnegative_b matches the grid cap at a = 0.5") {
    CHECK(max_nonnegative_b(0.5) == doctest::Approx(1.5));
    CHECK_NOTHROW(v_weights(0.5, 1.5, 2000));
    CHECK_THROWS_AS(v_weights(0.5, 1.51, 2000), InvalidConfigError);
}

TEST_CASE("eval_mse") {
    const auto y = to_eigen({0.0, 3.0});
    CHECK(eval_mse(y, y) == 0.0);
    CHECK(eval_mse(to_eigen({1.0, 3.0}), y) == 0.5);
    CHECK_THROWS_AS(eval_mse(to_eigen({1.0}), y), StructuralError);

    std::mt19937_64 rng(11);
    const auto data = oracle::random_predictions(rng, 20);
    CHECK(eval_mse(to_eigen(data.ph), to_eigen(data.y)) == doctest::Approx(oracle::mse(data.ph, data.y)).epsilon(1e-14));
}

TEST_CASE("eval_rank_weighted") {
    // losses [4, 1] with v = [0.5, 2]: (0.5 * 1 + 2 * 4) / 2
    const auto y = to_eigen({0.0, 0.0});
    const auto preds = to_eigen({2.0, 1.0});
    const auto vw = v_weights(0.5, 0.5, 2);
    CHECK(eval_rank_weighted(preds, y, vw, RankMode::sorted) == doctest::Approx(4.25));
    // fixed index: (0.5 * 4 + 2 * 1) / 2
    CHECK(eval_rank_weighted(preds, y, vw, RankMode::fixed_index) == doctest::Approx(2.0));
    CHECK(eval_rank_weighted(y, y, vw) == 0.0);

    const auto ones = v_weights(0.5, 1.0, 2);
    for (auto mode : {RankMode::sorted, RankMode::fixed_index}) {
        CHECK(eval_rank_weighted(preds, y, ones, mode) == doctest::Approx(eval_mse(preds, y)));
    }
    CHECK_THROWS_AS(eval_rank_weighted(to_eigen({1.0, 2.0, 3.0}), to_eigen({0.0, 0.0, 0.0}), vw), StructuralError);
}

TEST_CASE("eval_blended boundaries") {
    std::mt19937_64 rng(5);
    const auto data = oracle::random_predictions(rng, 30);
    const auto p = to_eigen(data.ph);
    const auto y = to_eigen(data.y);
    const auto vw = v_weights(0.5, 0.5, 30);
    CHECK(eval_blended(p, y, EvaluationSpec::blended(0.5, 0.5, 1.0)) == doctest::Approx(eval_mse(p, y)));
    CHECK(eval_blended(p, y, EvaluationSpec::blended(0.5, 0.5, 0.0)) == doctest::Approx(eval_rank_weighted(p, y, vw)));
    CHECK(eval_blended(p, y, EvaluationSpec::blended(0.5, 1.0, 0.5)) == doctest::Approx(eval_mse(p, y)).epsilon(1e-14));
    CHECK(eval_blended(p, y, EvaluationSpec::blended(0.5, 0.5, 0.3)) ==
          doctest::Approx(oracle::blended(data.ph, data.y, 0.5, 0.5, 0.3)).epsilon(1e-13));
    CHECK_THROWS_AS(eval_blended(p, y, EvaluationSpec::mse()), InvalidConfigError);
    CHECK_THROWS_AS(eval_blended(p, y, EvaluationSpec::blended(0.5, 3.0, 0.5)), InvalidConfigError);
}

TEST_CASE("ascending_order is stable on ties") {
    const auto order = ascending_order(to_eigen({2.0, 1.0, 2.0, 1.0, 0.5}));
    const std::vector<std::size_t> expected{4, 1, 3, 0, 2};
    CHECK(order == expected);
}

TEST_CASE("Objective coefficients reproduce the objective for fixed ranks") {
    std::mt19937_64 rng(99);
    const auto data = oracle::random_predictions(rng, 12);
    const auto p = to_eigen(data.ph);
    const auto y = to_eigen(data.y);
    for (double theta : {0.0, 0.4, 1.0}) {
        const Objective obj(EvaluationSpec::blended(0.3, 0.6, theta), 12);
        const Vector losses = squared_losses(p, y);
        const Vector coef = obj.instance_coefficients(losses);
        CHECK(coef.dot(losses) == doctest::Approx(obj.of_losses(losses)).epsilon(1e-13));
        CHECK(obj(p, y) == doctest::Approx(oracle::blended(data.ph, data.y, 0.3, 0.6, theta)).epsilon(1e-13));
        CHECK(coef.cwiseAbs().maxCoeff() <= obj.max_abs_coefficient() + 1e-15);
    }
    const Objective mse_obj(EvaluationSpec::mse(), 12);
    CHECK(mse_obj.is_separable());
    CHECK(mse_obj(p, y) == doctest::Approx(oracle::mse(data.ph, data.y)));
}
