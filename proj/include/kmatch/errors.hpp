#pragma once

#include <stdexcept>
#include <string>

namespace kmatch {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: non-finite coordinates, coincident points, bad indices,
/// odd cardinality, degenerate segments.
class InputError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Instance too large for an exact oracle.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Points violate the general-position assumption (three collinear points,
/// or a point on the supporting line of an edge).
class GeneralPositionError : public InputError {
public:
    using InputError::InputError;
};

/// A check that should hold did not: a locality precondition, a witness
/// with positive slack, or a broken inequality chain.
class VerificationError : public Error {
public:
    using Error::Error;
};

} // namespace kmatch
