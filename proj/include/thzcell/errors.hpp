#pragma once

#include <stdexcept>
#include <string>

namespace thzcell {

// Invalid argument or configuration value. `key()` names the offending
// parameter (a config key where one exists).
class ParameterError : public std::invalid_argument {
public:
    ParameterError(std::string key, const std::string& message);

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

// Instance too large for an exhaustive computation.
class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

// File could not be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Throws ParameterError(key, message) unless `condition` holds.
inline void require(bool condition, const char* key, const std::string& message) {
    if (!condition) throw ParameterError(key, message);
}

}  // namespace thzcell
