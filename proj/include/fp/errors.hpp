#pragma once

#include <stdexcept>
#include <string>

namespace fp {

// Root of the error taxonomy. Solvers throw subclasses; diagnostics that are
// expected outcomes (validator findings, trace status tags) are returned as
// values instead.
struct FpError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A scalar denominator fell below the degeneracy floor (1e-12).
struct DegenerateDenominator : FpError {
    using FpError::FpError;
};

// A matrix denominator is not safely positive definite (min eigenvalue < 1e-10).
struct SingularDenominator : FpError {
    using FpError::FpError;
};

// Argument outside the domain of an outer function or lifted evaluator.
struct DomainError : FpError {
    using FpError::FpError;
};

struct ShapeMismatch : FpError {
    using FpError::FpError;
};

// Projection requested onto a set kind the operation does not support.
struct UnsupportedSet : FpError {
    using FpError::FpError;
};

struct MaxItersError : FpError {
    using FpError::FpError;
};

struct InnerSolverFailure : FpError {
    using FpError::FpError;
};

// Oracle sweep would exceed its evaluation budget.
struct BudgetExceeded : FpError {
    using FpError::FpError;
};

struct NotSeparable : FpError {
    using FpError::FpError;
};

struct BadTopology : FpError {
    using FpError::FpError;
};

struct IoError : FpError {
    using FpError::FpError;
};

struct ConfigError : FpError {
    using FpError::FpError;
};

// Scalar denominators below this raise DegenerateDenominator.
inline constexpr double kDenominatorFloor = 1e-12;

// Matrix denominators with min eigenvalue below this raise SingularDenominator.
inline constexpr double kEigenvalueFloor = 1e-10;

// Inverse-transform brackets below this map to the -infinity sentinel.
inline constexpr double kBracketFloor = 1e-12;

}  // namespace fp
