#pragma once

#include <stdexcept>
#include <string>

namespace kdfkit {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Gamma evaluated at (or within pole tolerance of) a non-positive integer.
class PoleError : public Error {
public:
    using Error::Error;
};

/// A Gamma quotient has more numerator poles than denominator poles.
class UncancelledPoleError : public Error {
public:
    using Error::Error;
};

/// A series hits a zero denominator Pochhammer factor before terminating.
class DenominatorPoleError : public Error {
public:
    using Error::Error;
};

/// Argument outside the documented domain of an operation.
class RangeError : public Error {
public:
    using Error::Error;
};

/// The epsilon table produced non-finite entries before any usable column.
class AccelerationFailure : public Error {
public:
    using Error::Error;
};

class UnknownIdentity : public Error {
public:
    using Error::Error;
};

/// An identity instance lacks a required symbol or binds a foreign one.
class MissingParam : public Error {
public:
    using Error::Error;
};

} // namespace kdfkit
