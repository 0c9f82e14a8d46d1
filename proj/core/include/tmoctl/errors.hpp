#pragma once

#include <stdexcept>
#include <string>

namespace tmoctl {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroPolynomialError : Error {
    using Error::Error;
};

/// A transfer function was required to be proper (deg num <= deg den).
struct ImproperSystemError : Error {
    using Error::Error;
};

/// An operation required delay == 0 but the system carries a pure delay.
struct NonzeroDelayError : Error {
    using Error::Error;
};

/// Feedback around a loop containing a pure delay cannot be closed rationally.
struct AlgebraicLoopError : Error {
    using Error::Error;
};

struct DegenerateDenominatorError : Error {
    using Error::Error;
};

/// The system has poles in the closed right half-plane.
struct UnstableSystemError : Error {
    using Error::Error;
};

/// The system has poles on the imaginary axis.
struct MarginallyStableError : Error {
    using Error::Error;
};

struct NonHurwitzError : Error {
    using Error::Error;
};

struct ToleranceViolationError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace tmoctl
