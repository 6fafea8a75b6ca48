#include "complementarity/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "complementarity/errors.hpp"
#include "complementarity/random.hpp"

namespace hmc {

void DgpConfig::validate() const {
    if (d < 1) throw InvalidConfigError("dgp.d must be >= 1");
    if (!beta.empty() && beta.size() != d) {
        throw InvalidConfigError("dgp.beta has " + std::to_string(beta.size()) + " entries, expected d = " +
                                 std::to_string(d));
    }
    if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd)) throw InvalidConfigError("dgp.noise_sd must be >= 0");
    for (double b : beta) {
        if (!std::isfinite(b)) throw InvalidConfigError("dgp.beta must be finite");
    }
}

Vector DgpConfig::effective_beta() const {
    if (beta.empty()) return Vector::Ones(static_cast<Eigen::Index>(d));
    return Eigen::Map<const Vector>(beta.data(), static_cast<Eigen::Index>(beta.size()));
}

FeatureView FeatureView::all(std::size_t d) { return range(0, d); }

FeatureView FeatureView::range(std::size_t first, std::size_t last) {
    FeatureView v;
    for (std::size_t i = first; i < last; ++i) v.indices.push_back(i);
    return v;
}

FeatureView FeatureView::of(std::vector<std::size_t> indices, std::size_t d) {
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
        throw InvalidConfigError("feature view contains duplicate indices");
    }
    if (!indices.empty() && indices.back() >= d) {
        throw InvalidConfigError("feature index " + std::to_string(indices.back()) + " out of range for d = " +
                                 std::to_string(d));
    }
    return FeatureView{std::move(indices)};
}

Dataset generate_dataset(const DgpConfig& cfg) {
    cfg.validate();
    if (cfg.n == 0) throw StructuralError("generate_dataset requires n >= 1");

    const auto n = static_cast<Eigen::Index>(cfg.n);
    const auto d = static_cast<Eigen::Index>(cfg.d);

    Dataset out;
    out.features.resize(n, d);
    Rng feature_rng(derive_seed(cfg.seed, Stream::features));
    std::normal_distribution<double> standard_normal(0.0, 1.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) out.features(i, j) = standard_normal(feature_rng);
    }

    out.target = out.features * cfg.effective_beta();
    if (cfg.noise_sd > 0.0) {
        Rng noise_rng(derive_seed(cfg.seed, Stream::noise));
        std::normal_distribution<double> noise(0.0, cfg.noise_sd);
        for (Eigen::Index i = 0; i < n; ++i) out.target[i] += noise(noise_rng);
    }
    return out;
}

ViewPair overlap_split(std::size_t d, std::size_t z, std::uint64_t seed) {
    if (z >= d) {
        throw InvalidConfigError("overlap z = " + std::to_string(z) + " must be < d = " + std::to_string(d) +
                                 " (full overlap is excluded)");
    }
    if ((d - z) % 2 != 0) {
        throw InvalidConfigError("overlap z = " + std::to_string(z) + " leaves odd remainder d - z = " +
                                 std::to_string(d - z) + "; (d - z) must be even");
    }
    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(seed);
    std::shuffle(perm.begin(), perm.end(), rng);

    const std::size_t exclusive = (d - z) / 2;
    std::vector<std::size_t> human(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(z + exclusive));
    std::vector<std::size_t> machine(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(z));
    machine.insert(machine.end(), perm.begin() + static_cast<std::ptrdiff_t>(z + exclusive), perm.end());
    return ViewPair{FeatureView::of(std::move(human), d), FeatureView::of(std::move(machine), d)};
}

Vector alpha_mask(const Vector& column, double alpha, std::uint64_t seed) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw InvalidConfigError("alpha must lie in [0,1], got " + std::to_string(alpha));
    }
    if (!column.allFinite()) throw StructuralError("alpha_mask: column contains non-finite values");
    Vector out = column;
    Rng rng(seed);
    std::bernoulli_distribution keep(alpha);
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        if (!keep(rng)) out[i] = 0.0;
    }
    return out;
}

} // namespace hmc
