#pragma once

#include <stdexcept>
#include <string>

namespace liouville {

/// Field values exceeded the exponential overflow cap (default 700).
class blowup_error : public std::runtime_error {
public:
    explicit blowup_error(const std::string& what) : std::runtime_error(what) {}
};

/// Eigen-iteration failed to reach the requested residual within max_iter.
class iteration_stall : public std::runtime_error {
public:
    explicit iteration_stall(const std::string& what) : std::runtime_error(what) {}
};

/// A bisection bracket that does not actually bracket the existence boundary.
class invalid_bracket : public std::invalid_argument {
public:
    explicit invalid_bracket(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace liouville
