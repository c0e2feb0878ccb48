#pragma once

#include <stdexcept>
#include <string>

namespace siegert {

/// Base class for solver failures (iteration did not reach a root).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Newton iteration exhausted max_iter without meeting the tolerance.
struct NoConvergence : SolverError {
    using SolverError::SolverError;
};

/// |dJ/dk| fell below the derivative floor; likely a (near-)degenerate root.
struct DerivativeVanished : SolverError {
    using SolverError::SolverError;
};

/// The asymptotic seed formula does not produce a fourth-quadrant value.
struct SeedOutOfQuadrant : SolverError {
    using SolverError::SolverError;
};

/// A pole handed to build_state does not satisfy its characteristic equation.
struct InvalidPole : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ModelMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Expansion quadrature grid cannot resolve the most oscillatory state.
struct GridTooCoarse : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnsupportedOrder : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnsupportedOperator : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed or inconsistent run configuration (CLI exit code 1).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace siegert
