#ifndef XXZ_ERRORS_HPP
#define XXZ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace xxz {

/// Base class of all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand dimensions are incompatible (site out of range, size mismatch, ...).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Model parameters are degenerate (sin mu = 0, N < 1, zero q-factor, ...).
class DegenerateParameterError : public Error {
public:
    using Error::Error;
};

/// A normalization constant required by a construction vanishes,
/// e.g. the boundary matrix at the origin is zero so the Hamiltonian
/// normalization 1/x(0) blows up.
class SingularNormalizationError : public Error {
public:
    using Error::Error;
};

/// Requested size exceeds the configured cap for dense construction.
class ResourceLimitError : public Error {
public:
    using Error::Error;
};

/// Asymptotic charge extraction found a leading structure incompatible
/// with the expected block pattern; signals a construction bug upstream.
class ExtractionError : public Error {
public:
    using Error::Error;
};

/// Iterative routine (eigensolver, root finder) failed to converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// A constructed Laurent-valued object violates its documented degree bound.
class DegreeBoundError : public Error {
public:
    using Error::Error;
};

} // namespace xxz

#endif
