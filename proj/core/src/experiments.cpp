#include "complementarity/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <string>
#include <thread>

#include "complementarity/errors.hpp"
#include "complementarity/metrics.hpp"
#include "complementarity/objectives.hpp"
#include "complementarity/random.hpp"

namespace hmc {

std::string_view to_string(ExperimentKind k) {
    switch (k) {
    case ExperimentKind::overlap: return "overlap";
    case ExperimentKind::alpha: return "alpha";
    case ExperimentKind::objective: return "objective";
    }
    return "?";
}

ExperimentKind parse_experiment_kind(std::string_view s) {
    if (s == "overlap") return ExperimentKind::overlap;
    if (s == "alpha") return ExperimentKind::alpha;
    if (s == "objective") return ExperimentKind::objective;
    throw InvalidConfigError("kind: unknown experiment kind '" + std::string(s) + "' (expected overlap|alpha|objective)");
}

ExperimentConfig ExperimentConfig::defaults(ExperimentKind kind) {
    ExperimentConfig cfg;
    cfg.kind = kind;
    cfg.replicates = kind == ExperimentKind::objective ? 5 : 200;
    return cfg;
}

void ExperimentConfig::validate() const {
    if (n_train < 1) throw InvalidConfigError("n_train must be >= 1");
    if (n_test < 1) throw InvalidConfigError("n_test must be >= 1");
    if (replicates < 1) throw InvalidConfigError("replicates must be >= 1");
    dgp.validate();
    fit.validate();
    combiner.validate();

    const std::size_t d = dgp.d;
    const std::size_t intercept = fit.include_intercept ? 1 : 0;
    switch (kind) {
    case ExperimentKind::overlap:
        if (z_values.empty()) throw InvalidConfigError("sweep.z must not be empty");
        for (auto z : z_values) {
            if (z >= d) {
                throw InvalidConfigError("sweep.z: value " + std::to_string(z) + " must be < dgp.d = " +
                                         std::to_string(d) + " (full overlap is excluded)");
            }
            if ((d - z) % 2 != 0) {
                throw InvalidConfigError("sweep.z: value " + std::to_string(z) + " leaves odd remainder d - z = " +
                                         std::to_string(d - z) + "; (d - z) must be even");
            }
        }
        if (n_train < d + intercept) throw InvalidConfigError("n_train must be >= number of fitted coefficients");
        break;
    case ExperimentKind::alpha:
        if (alpha_values.empty()) throw InvalidConfigError("sweep.alpha must not be empty");
        for (double alpha : alpha_values) {
            if (!(alpha >= 0.0 && alpha <= 1.0)) {
                throw InvalidConfigError("sweep.alpha: value " + std::to_string(alpha) + " outside [0,1]");
            }
        }
        if (d < 2) throw InvalidConfigError("dgp.d must be >= 2 for the alpha experiment");
        if (n_train < d - 1 + intercept) throw InvalidConfigError("n_train must be >= number of fitted coefficients");
        break;
    case ExperimentKind::objective:
        if (!(a >= 0.0 && a <= 1.0)) throw InvalidConfigError("sweep.a must lie in [0,1]");
        if (b_values.empty()) throw InvalidConfigError("sweep.b must not be empty");
        if (theta_values.empty()) throw InvalidConfigError("sweep.theta must not be empty");
        for (double theta : theta_values) {
            if (!(theta >= 0.0 && theta <= 1.0)) {
                throw InvalidConfigError("sweep.theta: value " + std::to_string(theta) + " outside [0,1]");
            }
        }
        for (double b : b_values) {
            if (!(b > 0.0) || !std::isfinite(b)) {
                throw InvalidConfigError("sweep.b: value " + std::to_string(b) + " must be positive");
            }
            try {
                v_weights(a, b, n_train, allow_negative);
                v_weights(a, b, n_test, allow_negative);
            } catch (const InvalidConfigError& e) {
                throw InvalidConfigError(std::string("sweep.b: ") + e.what());
            }
        }
        if (n_train < d + intercept) throw InvalidConfigError("n_train must be >= number of fitted coefficients");
        break;
    }
}

ReplicateSetup replicate_setup(const ExperimentConfig& cfg) {
    ReplicateSetup s;
    s.dgp = cfg.dgp;
    s.n_train = cfg.n_train;
    s.n_test = cfg.n_test;
    s.fit = cfg.fit;
    s.combiner = cfg.combiner;
    s.allow_negative = cfg.allow_negative;
    return s;
}

std::vector<SweepPoint> sweep_points(const ExperimentConfig& cfg) {
    std::vector<SweepPoint> points;
    switch (cfg.kind) {
    case ExperimentKind::overlap:
        for (auto z : cfg.z_values) points.push_back(SweepPoint{cfg.kind, z, 0.0, 0.0, 0.0, 0.0});
        break;
    case ExperimentKind::alpha:
        for (double alpha : cfg.alpha_values) points.push_back(SweepPoint{cfg.kind, 0, alpha, 0.0, 0.0, 0.0});
        break;
    case ExperimentKind::objective:
        for (double b : cfg.b_values) {
            for (double theta : cfg.theta_values) points.push_back(SweepPoint{cfg.kind, 0, 0.0, cfg.a, b, theta});
        }
        break;
    }
    return points;
}

std::uint64_t replicate_seed(std::uint64_t base_seed, ExperimentKind kind, std::size_t point_index,
                             std::size_t replicate) {
    return derive_seed(base_seed, {static_cast<std::uint64_t>(kind) + 1, point_index, replicate});
}

namespace {

struct SplitData {
    Dataset train;
    Dataset test;
};

SplitData draw_data(const ReplicateSetup& setup, std::uint64_t seed) {
    DgpConfig train_cfg = setup.dgp;
    train_cfg.n = setup.n_train;
    train_cfg.seed = derive_seed(seed, Stream::train_data);
    DgpConfig test_cfg = setup.dgp;
    test_cfg.n = setup.n_test;
    test_cfg.seed = derive_seed(seed, Stream::test_data);
    return SplitData{generate_dataset(train_cfg), generate_dataset(test_cfg)};
}

CombinerConfig seeded(CombinerConfig cfg, std::uint64_t seed) {
    cfg.seed = derive_seed(seed, Stream::combiner);
    return cfg;
}

void check_dominance(double joint, double h, double m, const char* what) {
    const double best = std::min(h, m);
    const double slack = 1e-12 * std::max(1.0, std::abs(best));
    if (joint > best + slack) {
        std::ostringstream msg;
        msg << "oracle combiner lost to a single agent on " << what << ": joint=" << joint << " human=" << h
            << " machine=" << m;
        throw Error(msg.str());
    }
}

ReplicateRecord mse_record(const PredictionSet& preds, const CombinerConfig& combiner, std::uint64_t seed) {
    const WeightVector w = optimize_weights_mse(preds, combiner);
    ReplicateRecord rec;
    rec.seed = seed;
    rec.c_across = c_across(w);
    rec.c_within = c_within(w);
    rec.loss_joint = eval_mse(joint_predictions(preds, w), preds.y());
    rec.loss_h = eval_mse(preds.pred_h(), preds.y());
    rec.loss_m = eval_mse(preds.pred_m(), preds.y());
    check_dominance(rec.loss_joint, rec.loss_h, rec.loss_m, "squared loss");
    return rec;
}

} // namespace

ReplicateRecord run_replicate_overlap(std::size_t z, const ReplicateSetup& setup, std::uint64_t seed) {
    const ViewPair views = overlap_split(setup.dgp.d, z, derive_seed(seed, Stream::feature_split));
    const SplitData data = draw_data(setup, seed);

    const LinearPolicy human = fit_ols(data.train.features, data.train.target, views.human, setup.fit);
    const LinearPolicy machine = fit_ols(data.train.features, data.train.target, views.machine, setup.fit);
    const auto preds = PredictionSet::with_sequential_ids(data.test.target, predict(human, data.test.features),
                                                          predict(machine, data.test.features));
    return mse_record(preds, seeded(setup.combiner, seed), seed);
}

ReplicateRecord run_replicate_alpha(double alpha, const ReplicateSetup& setup, std::uint64_t seed) {
    const std::size_t d = setup.dgp.d;
    if (d < 2) throw InvalidConfigError("alpha experiment requires d >= 2");
    const auto last = static_cast<Eigen::Index>(d - 1);
    SplitData data = draw_data(setup, seed);

    // The machine sees only the last column, masked independently on train and test.
    Matrix train_m = data.train.features;
    train_m.col(last) = alpha_mask(train_m.col(last), alpha, derive_seed(seed, Stream::train_mask));
    Matrix test_m = data.test.features;
    test_m.col(last) = alpha_mask(test_m.col(last), alpha, derive_seed(seed, Stream::test_mask));

    const FeatureView human_view = FeatureView::range(0, d - 1);
    const FeatureView machine_view = FeatureView::range(d - 1, d);
    const LinearPolicy human = fit_ols(data.train.features, data.train.target, human_view, setup.fit);
    const LinearPolicy machine = fit_ols(train_m, data.train.target, machine_view, setup.fit);
    const auto preds = PredictionSet::with_sequential_ids(data.test.target, predict(human, data.test.features),
                                                          predict(machine, test_m));
    return mse_record(preds, seeded(setup.combiner, seed), seed);
}

ReplicateRecord run_replicate_objective(double a, double b, double theta, const ReplicateSetup& setup,
                                        std::uint64_t seed) {
    const SplitData data = draw_data(setup, seed);
    const FeatureView all = FeatureView::all(setup.dgp.d);

    const LinearPolicy machine = fit_ols(data.train.features, data.train.target, all, setup.fit);
    const LinearPolicy human =
        fit_rank_weighted(data.train.features, data.train.target, all, a, b, setup.fit, setup.allow_negative).policy;
    const auto preds = PredictionSet::with_sequential_ids(data.test.target, predict(human, data.test.features),
                                                          predict(machine, data.test.features));

    EvaluationSpec spec = EvaluationSpec::blended(a, b, theta);
    spec.rank_mode = setup.fit.rank_mode;
    spec.allow_negative = setup.allow_negative;
    const CombinerResult combined = solve_weights_general(preds, spec, seeded(setup.combiner, seed));
    const Objective objective(spec, preds.size());

    const Vector joint = joint_predictions(preds, combined.weights);
    const double g_joint = objective(joint, preds.y());
    const double g_h = objective(preds.pred_h(), preds.y());
    const double g_m = objective(preds.pred_m(), preds.y());
    check_dominance(g_joint, g_h, g_m, "blended objective");

    ReplicateRecord rec;
    rec.seed = seed;
    rec.c_across = c_across(combined.weights);
    rec.c_within = c_within(combined.weights);
    rec.loss_joint = eval_mse(joint, preds.y());
    rec.loss_h = eval_mse(preds.pred_h(), preds.y());
    rec.loss_m = eval_mse(preds.pred_m(), preds.y());
    rec.dG_h = g_joint - g_h;
    rec.dG_m = g_joint - g_m;
    return rec;
}

ReplicateRecord run_replicate(const SweepPoint& point, const ReplicateSetup& setup, std::uint64_t seed) {
    switch (point.kind) {
    case ExperimentKind::overlap: return run_replicate_overlap(point.z, setup, seed);
    case ExperimentKind::alpha: return run_replicate_alpha(point.alpha, setup, seed);
    case ExperimentKind::objective: return run_replicate_objective(point.a, point.b, point.theta, setup, seed);
    }
    throw InvalidConfigError("unknown experiment kind");
}

MetricSummary summarize(const std::vector<double>& values) {
    MetricSummary s;
    if (values.empty()) return s;
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.std = std::sqrt(ss / (n - 1.0));
    }
    return s;
}

namespace {

std::string describe(const SweepPoint& p) {
    std::ostringstream out;
    switch (p.kind) {
    case ExperimentKind::overlap: out << "z=" << p.z; break;
    case ExperimentKind::alpha: out << "alpha=" << p.alpha; break;
    case ExperimentKind::objective: out << "a=" << p.a << " b=" << p.b << " theta=" << p.theta; break;
    }
    return out.str();
}

PointSummary aggregate(const SweepPoint& point, const ReplicateRecord* first, std::size_t count) {
    std::vector<double> ca, cw, lj, lh, lm, gh, gm;
    for (std::size_t r = 0; r < count; ++r) {
        const auto& rec = first[r];
        ca.push_back(rec.c_across);
        cw.push_back(rec.c_within);
        lj.push_back(rec.loss_joint);
        lh.push_back(rec.loss_h);
        lm.push_back(rec.loss_m);
        if (rec.dG_h) gh.push_back(*rec.dG_h);
        if (rec.dG_m) gm.push_back(*rec.dG_m);
    }
    PointSummary s;
    s.point = point;
    s.replicates = count;
    s.c_across = summarize(ca);
    s.c_within = summarize(cw);
    s.loss_joint = summarize(lj);
    s.loss_h = summarize(lh);
    s.loss_m = summarize(lm);
    if (!gh.empty()) s.dG_h = summarize(gh);
    if (!gm.empty()) s.dG_m = summarize(gm);
    return s;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned threads) {
    cfg.validate();
    const auto points = sweep_points(cfg);
    const ReplicateSetup setup = replicate_setup(cfg);
    const std::size_t reps = cfg.replicates;
    const std::size_t total = points.size() * reps;

    std::vector<ReplicateRecord> records(total);
    std::vector<std::exception_ptr> failures(total);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t task = next++; task < total; task = next++) {
            const std::size_t p = task / reps;
            const std::size_t r = task % reps;
            const std::uint64_t seed = replicate_seed(cfg.seed, cfg.kind, p, r);
            try {
                records[task] = run_replicate(points[p], setup, seed);
                records[task].point_index = p;
                records[task].replicate = r;
            } catch (...) {
                failures[task] = std::current_exception();
            }
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(total, 1))));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    }

    for (std::size_t task = 0; task < total; ++task) {
        if (!failures[task]) continue;
        const std::size_t p = task / reps;
        const std::size_t r = task % reps;
        std::string reason = "unknown error";
        try {
            std::rethrow_exception(failures[task]);
        } catch (const std::exception& e) {
            reason = e.what();
        } catch (...) {
        }
        std::ostringstream msg;
        msg << "sweep point " << p << " (" << describe(points[p]) << "), replicate " << r << ", seed "
            << replicate_seed(cfg.seed, cfg.kind, p, r) << ": " << reason;
        throw Error(msg.str());
    }

    ExperimentResult result;
    result.kind = cfg.kind;
    for (std::size_t p = 0; p < points.size(); ++p) {
        result.points.push_back(aggregate(points[p], records.data() + p * reps, reps));
    }
    result.replicates = std::move(records);
    return result;
}

} // namespace hmc
