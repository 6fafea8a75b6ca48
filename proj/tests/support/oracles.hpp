#pragma once

// Brute-force reference implementations used only by tests. They work on
// std::vector<double> with plain loops and share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/QR>

#include "complementarity/types.hpp"

namespace oracle {

using Vec = std::vector<double>;

inline Vec to_vec(const hmc::Vector& v) { return Vec(v.data(), v.data() + v.size()); }

inline hmc::Vector to_eigen(const Vec& v) {
    hmc::Vector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
    return out;
}

// Variance of w_h (the library uses w_m).
inline double c_across(const Vec& w_h) {
    double mean = 0.0;
    for (double w : w_h) mean += w;
    mean /= static_cast<double>(w_h.size());
    double var = 0.0;
    for (double w : w_h) var += (w - mean) * (w - mean);
    return var / static_cast<double>(w_h.size());
}

// 1 - mean (2 w_h - 1)^2.
inline double c_within(const Vec& w_h) {
    double s = 0.0;
    for (double w : w_h) s += (2.0 * w - 1.0) * (2.0 * w - 1.0);
    return 1.0 - s / static_cast<double>(w_h.size());
}

inline Vec v_weights(double a, double b, std::size_t n) {
    Vec v;
    for (std::size_t i = 1; i <= n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n);
        v.push_back((3.0 - 3.0 * b) / (a * a - a + 1.0) * (3.0 * t * t - 2.0 * (a + 1.0) * t + a) + 1.0);
    }
    return v;
}

inline double mse(const Vec& p, const Vec& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += (p[i] - y[i]) * (p[i] - y[i]);
    return s / static_cast<double>(y.size());
}

inline double rank_weighted(const Vec& p, const Vec& y, const Vec& v) {
    Vec losses;
    for (std::size_t i = 0; i < y.size(); ++i) losses.push_back((p[i] - y[i]) * (p[i] - y[i]));
    std::sort(losses.begin(), losses.end());
    double s = 0.0;
    for (std::size_t i = 0; i < losses.size(); ++i) s += v[i] * losses[i];
    return s / static_cast<double>(y.size());
}

inline double blended(const Vec& p, const Vec& y, double a, double b, double theta) {
    return theta * mse(p, y) + (1.0 - theta) * rank_weighted(p, y, v_weights(a, b, y.size()));
}

inline Vec joint(const Vec& w_h, const Vec& ph, const Vec& pm) {
    Vec out;
    for (std::size_t i = 0; i < w_h.size(); ++i) out.push_back(w_h[i] * ph[i] + (1.0 - w_h[i]) * pm[i]);
    return out;
}

// argmin over the 1-D grid {0, r, ..., 1} of the squared joint error.
inline double grid_weight_1d(double ph, double pm, double y, double resolution) {
    const auto steps = static_cast<int>(std::lround(1.0 / resolution));
    double best_w = 0.0, best = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= steps; ++k) {
        const double w = static_cast<double>(k) / steps;
        const double e = w * ph + (1.0 - w) * pm - y;
        if (e * e < best) {
            best = e * e;
            best_w = w;
        }
    }
    return best_w;
}

// Least squares through column-pivoted QR (not the normal equations).
inline hmc::Vector least_squares_qr(const hmc::Matrix& X, const hmc::Vector& y) {
    return X.colPivHouseholderQr().solve(y);
}

struct RandomPredictions {
    Vec y, ph, pm;
};

inline RandomPredictions random_predictions(std::mt19937_64& rng, std::size_t n, double spread = 2.0) {
    std::normal_distribution<double> normal(0.0, spread);
    RandomPredictions r;
    for (std::size_t i = 0; i < n; ++i) {
        r.y.push_back(normal(rng));
        r.ph.push_back(normal(rng));
        r.pm.push_back(normal(rng));
    }
    return r;
}

} // namespace oracle
