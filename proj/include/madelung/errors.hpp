#pragma once

#include <stdexcept>
#include <string>

namespace madelung {

/// Base class for every error the library raises on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Antidifferentiation of c*x^-1 would leave the power-sum family.
struct ExponentMinusOne : Error {
    using Error::Error;
};

/// Evaluation at x = 0 while a negative exponent is present.
struct EvalAtSingularity : Error {
    using Error::Error;
};

/// Truncated series still had a significant term at k_max.
struct SeriesNotConverged : Error {
    SeriesNotConverged(const std::string& msg, double last_term)
        : Error(msg), last_term_magnitude(last_term) {}
    double last_term_magnitude;
};

/// Q'(x) = 0, so the amplitude prefactor is undefined at this point.
struct PrefactorSingular : Error {
    using Error::Error;
};

/// Bohm potential requested where the amplitude vanishes.
struct AmplitudeZero : Error {
    using Error::Error;
};

/// A structural invariant of a domain type was violated.
struct InvariantViolation : Error {
    using Error::Error;
};

/// kappa^2 c1 - 4 eta^2 < 0: no real c2 satisfies nu(0) = 0.
/// A special case of InvariantViolation so configuration-level checks can
/// treat it uniformly while callers may still catch the precise cause.
struct NegativeDiscriminant : InvariantViolation {
    using InvariantViolation::InvariantViolation;
};

/// Characteristic curve reached a point where Q' cannot be evaluated.
struct TrajectoryHitSingularity : Error {
    using Error::Error;
};

/// Stencil steps are too coarse for the grid's exclusion zones.
struct StencilInExclusionZone : Error {
    using Error::Error;
};

/// Structured input (configuration or table text) does not match its
/// documented schema.
struct SchemaError : Error {
    using Error::Error;
};

/// Two field tables do not share the same sampling grid.
struct GridMismatch : Error {
    using Error::Error;
};

/// Filesystem failure while reading or writing artifacts.
struct IoError : Error {
    using Error::Error;
};

}  // namespace madelung
