#include "thzcell/errors.hpp"

#include <utility>

namespace thzcell {

ParameterError::ParameterError(std::string key, const std::string& message)
    : std::invalid_argument(key + ": " + message), key_(std::move(key)) {}

}  // namespace thzcell
