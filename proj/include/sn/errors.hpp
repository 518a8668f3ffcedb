#pragma once

#include <stdexcept>
#include <string>

namespace sn {

// Bad user-supplied parameters (CLI exit code 2).
struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Failures during computation (CLI exit code 1).
struct RuntimeError : std::runtime_error {
    explicit RuntimeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConvergenceError : RuntimeError {
    explicit ConvergenceError(const std::string& msg) : RuntimeError(msg) {}
};

struct PlacementError : RuntimeError {
    explicit PlacementError(const std::string& msg) : RuntimeError(msg) {}
};

struct SingularityError : RuntimeError {
    explicit SingularityError(const std::string& msg) : RuntimeError(msg) {}
};

struct ResolutionError : RuntimeError {
    explicit ResolutionError(const std::string& msg) : RuntimeError(msg) {}
};

} // namespace sn
