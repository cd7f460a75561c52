#pragma once

#include <stdexcept>
#include <string>

namespace isac {

// Base for every error raised by the library. The CLI maps the concrete
// subclasses onto distinct exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Mismatched vector lengths or grid shapes.
class DimensionError : public Error {
public:
    using Error::Error;
};

// An argument outside the mathematical domain of the operation
// (negative noise PSD, zero-energy input, nonpositive distance, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// An iterative solver failed to reach its tolerance within its budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Problem size exceeds a desk-scale guard (exhaustive search, Kronecker size).
class SizeError : public Error {
public:
    using Error::Error;
};

} // namespace isac
