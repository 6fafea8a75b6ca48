#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "complementarity/types.hpp"

namespace hmc {

/// Linear-Gaussian data-generating process: x ~ N(0, I_d), y = x'beta + eps,
/// eps ~ N(0, noise_sd^2). An empty `beta` means the all-ones vector.
struct DgpConfig {
    std::size_t d = 10;
    double noise_sd = 1.0;
    std::vector<double> beta;
    std::size_t n = 0;
    std::uint64_t seed = 0;

    void validate() const;
    Vector effective_beta() const;

    bool operator==(const DgpConfig&) const = default;
};

struct Dataset {
    Matrix features;  // n x d
    Vector target;    // n
};

/// Sorted, duplicate-free set of column indices an agent can observe.
struct FeatureView {
    std::vector<std::size_t> indices;

    static FeatureView all(std::size_t d);
    /// Columns [first, last).
    static FeatureView range(std::size_t first, std::size_t last);

    /// Sorts and validates: no duplicates, every index < d.
    static FeatureView of(std::vector<std::size_t> indices, std::size_t d);

    std::size_t size() const noexcept { return indices.size(); }
    bool operator==(const FeatureView&) const = default;
};

struct ViewPair {
    FeatureView human;
    FeatureView machine;
};

/// Deterministic in cfg.seed; n == 0 is a StructuralError.
Dataset generate_dataset(const DgpConfig& cfg);

/// z shared features plus (d - z)/2 exclusive features per agent, assigned
/// at random from `seed`. Requires 0 <= z < d and (d - z) even.
ViewPair overlap_split(std::size_t d, std::size_t z, std::uint64_t seed);

/// Keeps each entry independently with probability alpha, zeroes it otherwise.
Vector alpha_mask(const Vector& column, double alpha, std::uint64_t seed);

} // namespace hmc
