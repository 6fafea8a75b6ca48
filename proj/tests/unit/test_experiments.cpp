#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "complementarity/errors.hpp"
#include "complementarity/experiments.hpp"

using namespace hmc;

namespace {

ExperimentConfig small(ExperimentKind kind, std::size_t reps) {
    auto cfg = ExperimentConfig::defaults(kind);
    cfg.n_train = 2000;
    cfg.n_test = 2000;
    cfg.replicates = reps;
    cfg.seed = 2024;
    return cfg;
}

} // namespace

TEST_CASE("overlap losses sit at their analytic values") {
    auto cfg = small(ExperimentKind::overlap, 5);
    cfg.z_values = {0, 4, 8};
    const auto res = run_experiment(cfg, 2);
    REQUIRE(res.points.size() == 3);
    for (const auto& p : res.points) {
        const double expected = (12.0 - static_cast<double>(p.point.z)) / 2.0;
        CHECK(std::abs(p.loss_h.mean - expected) <= 0.4);
        CHECK(std::abs(p.loss_m.mean - expected) <= 0.4);
        CHECK(p.loss_joint.mean < std::min(p.loss_h.mean, p.loss_m.mean));
        CHECK(p.c_across.mean >= 0.0);
        CHECK(p.c_across.mean <= 0.25);
        CHECK(!p.dG_h.has_value());
    }
    CHECK(res.replicates.size() == 15);
}

TEST_CASE("alpha experiment: machine loss falls from 11 to 10") {
    auto cfg = small(ExperimentKind::alpha, 5);
    cfg.alpha_values = {0.0, 0.5, 1.0};
    const auto res = run_experiment(cfg, 2);
    for (const auto& p : res.points) {
        CHECK(std::abs(p.loss_m.mean - (11.0 - p.point.alpha)) <= 0.5);
        CHECK(std::abs(p.loss_h.mean - 2.0) <= 0.2);
    }
}

TEST_CASE("objective experiment at b = 1 shows no complementarity") {
    auto cfg = small(ExperimentKind::objective, 2);
    cfg.n_train = 400;
    cfg.n_test = 200;
    cfg.b_values = {0.5, 1.0};
    cfg.theta_values = {0.0, 1.0};
    const auto res = run_experiment(cfg, 2);
    REQUIRE(res.points.size() == 4);
    CHECK(res.points[0].point.b == 0.5);
    CHECK(res.points[1].point.theta == 1.0);
    for (const auto& p : res.points) {
        REQUIRE(p.dG_h.has_value());
        CHECK(p.dG_h->mean <= 1e-9);
        CHECK(p.dG_m->mean <= 1e-9);
        if (p.point.b == 1.0) {
            CHECK(p.c_across.mean <= 1e-12);
            CHECK(p.c_within.mean <= 1e-12);
        }
    }
}

TEST_CASE("single replicate reports zero spread") {
    auto cfg = small(ExperimentKind::overlap, 1);
    cfg.z_values = {2};
    const auto res = run_experiment(cfg);
    CHECK(res.points[0].c_across.std == 0.0);
    CHECK(res.points[0].loss_joint.std == 0.0);
}

TEST_CASE("results do not depend on thread count") {
    auto cfg = small(ExperimentKind::overlap, 4);
    cfg.n_train = 300;
    cfg.n_test = 100;
    const auto one = run_experiment(cfg, 1);
    const auto many = run_experiment(cfg, 7);
    CHECK(one == many);
    CHECK(run_experiment(cfg, 3) == one);

    cfg.seed += 1;
    CHECK(!(run_experiment(cfg, 1) == one));
}

TEST_CASE("replicate seeds and records line up") {
    auto cfg = small(ExperimentKind::alpha, 3);
    cfg.n_train = 100;
    cfg.n_test = 50;
    cfg.alpha_values = {0.2, 0.8};
    const auto res = run_experiment(cfg, 2);
    for (const auto& rec : res.replicates) {
        CHECK(rec.seed == replicate_seed(cfg.seed, cfg.kind, rec.point_index, rec.replicate));
        const auto again = run_replicate(sweep_points(cfg)[rec.point_index], replicate_setup(cfg), rec.seed);
        CHECK(again.c_across == rec.c_across);
        CHECK(again.loss_joint == rec.loss_joint);
    }
}

TEST_CASE("summarize uses the sample standard deviation") {
    const auto s = summarize({1.0, 2.0, 3.0, 4.0});
    CHECK(s.mean == 2.5);
    CHECK(s.std == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-14));
    CHECK(summarize({7.0}).std == 0.0);
}

TEST_CASE("a failing replicate names its sweep point, replicate and seed") {
    auto cfg = small(ExperimentKind::alpha, 2);
    cfg.n_train = 50;
    cfg.n_test = 20;
    cfg.alpha_values = {0.5, 0.0};
    cfg.fit.ridge_epsilon = 0.0;
    try {
        run_experiment(cfg, 2);
        FAIL("expected failure");
    } catch (const Error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("sweep point 1") != std::string::npos);
        CHECK(msg.find("alpha=0") != std::string::npos);
        CHECK(msg.find("replicate 0") != std::string::npos);
        CHECK(msg.find(std::to_string(replicate_seed(cfg.seed, cfg.kind, 1, 0))) != std::string::npos);
    }
}

TEST_CASE("config validation names the field") {
    auto expect_field = [](const ExperimentConfig& cfg, const std::string& field) {
        try {
            cfg.validate();
            FAIL("expected InvalidConfigError for " << field);
        } catch (const InvalidConfigError& e) {
            CHECK(std::string(e.what()).find(field) != std::string::npos);
        }
    };
    auto cfg = ExperimentConfig::defaults(ExperimentKind::overlap);
    cfg.z_values = {9};
    expect_field(cfg, "sweep.z");
    cfg = ExperimentConfig::defaults(ExperimentKind::alpha);
    cfg.alpha_values = {1.2};
    expect_field(cfg, "sweep.alpha");
    cfg = ExperimentConfig::defaults(ExperimentKind::objective);
    cfg.b_values = {2.0};
    expect_field(cfg, "sweep.b");
    cfg.allow_negative = true;
    CHECK_NOTHROW(cfg.validate());
    cfg.theta_values = {-0.1};
    expect_field(cfg, "sweep.theta");
    cfg = ExperimentConfig::defaults(ExperimentKind::overlap);
    cfg.replicates = 0;
    expect_field(cfg, "replicates");

    CHECK(ExperimentConfig::defaults(ExperimentKind::objective).replicates == 5);
    CHECK(ExperimentConfig::defaults(ExperimentKind::alpha).replicates == 200);
    CHECK(parse_experiment_kind("alpha") == ExperimentKind::alpha);
    CHECK_THROWS_AS(parse_experiment_kind("beta"), InvalidConfigError);
}
