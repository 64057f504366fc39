#pragma once

#include <stdexcept>
#include <string>

namespace osserman {

/// Base class for all failures raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The restricted Gram matrix of a candidate subspace has an eigenvalue
/// inside the degeneracy band [-tol, tol].
struct DegenerateSubspaceError : Error {
    using Error::Error;
};

/// Input vectors of a frame are linearly dependent.
struct RankDeficientError : Error {
    using Error::Error;
};

/// An operator expected to square to zero fails the nilpotency bound.
struct NotNilpotentError : Error {
    using Error::Error;
};

/// Rejection sampling exceeded the configured number of attempts.
struct SamplingExhaustedError : Error {
    using Error::Error;
};

/// A parameter search did not bracket the sought degeneracy.
struct SearchFailedError : Error {
    using Error::Error;
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

/// A frame operation requires more flat-factor capacity than available.
struct CapacityExceededError : Error {
    using Error::Error;
};

struct FrameNotOrthonormalError : Error {
    using Error::Error;
};

/// Metric inversion failed at a finite-difference stencil point.
struct IllConditionedError : Error {
    using Error::Error;
};

/// Malformed manifest, report, or command-line input.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace osserman
