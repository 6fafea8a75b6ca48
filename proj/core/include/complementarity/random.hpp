#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace hmc {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Derives an independent stream seed from a base seed and a tuple of tags
/// (experiment, sweep point, replicate, purpose, ...). The result depends
/// only on the values, so streams do not depend on execution order.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) noexcept;

/// Stream purposes inside one replicate.
enum class Stream : std::uint64_t {
    train_data = 1,
    test_data = 2,
    feature_split = 3,
    train_mask = 4,
    test_mask = 5,
    combiner = 6,
    features = 7,
    noise = 8,
};

inline std::uint64_t derive_seed(std::uint64_t base, Stream purpose) noexcept {
    return derive_seed(base, {static_cast<std::uint64_t>(purpose)});
}

} // namespace hmc
