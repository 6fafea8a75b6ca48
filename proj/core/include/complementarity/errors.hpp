#pragma once

#include <stdexcept>
#include <string>

namespace hmc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inputs whose shapes or identities do not line up (length mismatch,
/// duplicate ids, missing columns, non-finite values).
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A configuration value outside its admissible range.
class InvalidConfigError : public Error {
public:
    using Error::Error;
};

/// A normal-equation system that stays singular after ridge regularization.
class IllConditionedError : public Error {
public:
    IllConditionedError(const std::string& what, double condition_estimate);

    double condition_estimate() const noexcept { return condition_estimate_; }

private:
    double condition_estimate_;
};

} // namespace hmc
