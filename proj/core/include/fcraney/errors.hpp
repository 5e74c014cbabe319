#pragma once

#include <stdexcept>
#include <string>

namespace fcraney {

// Base class for every failure this library raises on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument lies outside the mathematical domain of the operation.
struct DomainError : Error {
    using Error::Error;
};

// Gamma evaluated at a non-positive integer.
struct PoleError : DomainError {
    using DomainError::DomainError;
};

// Moment formula asked for parameters outside its admissible region.
struct ParameterRegionError : DomainError {
    using DomainError::DomainError;
};

// Requested point is too close to the support edge for series evaluation;
// callers that need the edge must integrate over it instead.
struct EdgeRegionError : Error {
    using Error::Error;
};

// An iteration hit its cap before reaching tolerance. `achieved` is the best
// error estimate at the point of failure.
struct ConvergenceError : Error {
    double achieved;
    ConvergenceError(const std::string& what, double achieved_estimate)
        : Error(what), achieved(achieved_estimate) {}
};

}  // namespace fcraney
