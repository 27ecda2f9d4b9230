#pragma once

#include <stdexcept>
#include <string>

namespace xsblab {

// Bad arguments or malformed problem setup (rejected preconditions).
class InvalidArgument : public std::invalid_argument {
public:
    explicit InvalidArgument(const std::string& msg) : std::invalid_argument(msg) {}
};

// Malformed or inconsistent run configuration (unknown keys, missing sections).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation left its validity envelope (failed bracketing, non-finite
// intermediate, unresolved grid detected mid-run).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Norm growth past the divergence threshold during evolution.  Carries the
// step and time at which the threshold was crossed.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(const std::string& msg, int step, double time, double norm)
        : std::runtime_error(msg), step(step), time(time), norm(norm) {}
    int step;
    double time;
    double norm;
};

} // namespace xsblab
