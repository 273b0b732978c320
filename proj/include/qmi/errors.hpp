#pragma once

#include <stdexcept>
#include <string>

namespace qmi {

/// Geometry or matrix input violates a documented precondition
/// (degenerate panel, non-simple polygon, non-positive size, ...).
/// Alias of std::invalid_argument so callers may catch either.
using InvalidArgumentError = std::invalid_argument;

/// A quantity left the mathematically admissible range, e.g. a scattering
/// eigenvalue >= 1 for disjoint bodies.  Indicates overlapping input
/// geometry or a broken kernel matrix, not a tolerance issue.
class PhysicalInconsistencyError : public std::runtime_error {
public:
    explicit PhysicalInconsistencyError(const std::string& what)
        : std::runtime_error(what) {}
};

/// A linear solve was attempted on a matrix whose estimated reciprocal
/// condition number is below the trust threshold.
class IllConditionedError : public std::runtime_error {
public:
    IllConditionedError(const std::string& what, double rcond_estimate)
        : std::runtime_error(what), rcond(rcond_estimate) {}
    double rcond;
};

/// Matrix assembly failed (quadrature recursion exhausted, NaN entry, ...).
class AssemblyError : public std::runtime_error {
public:
    explicit AssemblyError(const std::string& what)
        : std::runtime_error(what) {}
};

/// Config file could not be parsed; message carries line/field context.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace qmi
