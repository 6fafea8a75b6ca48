#include "complementarity/errors.hpp"

namespace hmc {

IllConditionedError::IllConditionedError(const std::string& what, double condition_estimate)
    : Error(what), condition_estimate_(condition_estimate) {}

} // namespace hmc
