#pragma once

#include <stdexcept>
#include <string>

namespace h2dri {

// Invalid input data or a violated model invariant. Messages name the
// offending field and index where applicable.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Optimization engine could not produce a trustworthy result
// (iteration limit, internal inconsistency, unknown engine name).
class EngineError : public std::runtime_error {
public:
    explicit EngineError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace h2dri
