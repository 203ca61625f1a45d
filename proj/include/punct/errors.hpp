#pragma once

#include <stdexcept>
#include <string>

namespace punct {

/// Base class for every error raised by the library. The C API maps each
/// subclass onto one status code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (r <= 0, r outside the annulus, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// No positive stationary profile C r^{-2/(p-1)} exists for these parameters.
class RegimeError : public Error {
public:
    using Error::Error;
};

/// Barrier case does not match the (n, p) regime.
class RegimeMismatch : public Error {
public:
    using Error::Error;
};

/// A parameter search exhausted its range.
class NotFound : public Error {
public:
    using Error::Error;
};

class SolveError : public Error {
public:
    using Error::Error;
};

class ScheduleError : public Error {
public:
    using Error::Error;
};

class MissingEstimate : public Error {
public:
    using Error::Error;
};

} // namespace punct
