#pragma once

#include <stdexcept>
#include <string>

namespace bellbound {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Incompatible matrix/vector dimensions.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Dimension exceeds the supported cap.
class SizeError : public Error {
public:
    using Error::Error;
};

// An input that must be Hermitian is not.
class SymmetryError : public Error {
public:
    using Error::Error;
};

// A matrix or state violates a feasibility constraint (spectrum range,
// normalization, positivity, trace).
class FeasibilityError : public Error {
public:
    using Error::Error;
};

// A scalar input lies outside its admissible interval.
class RangeError : public Error {
public:
    using Error::Error;
};

// An argument is malformed (zero shots, missing data, bad step).
class ArgumentError : public Error {
public:
    using Error::Error;
};

// A scenario file could not be parsed.
class ParseError : public Error {
public:
    using Error::Error;
};

// A file could not be opened or read.
class IoError : public Error {
public:
    using Error::Error;
};

// An iterative routine failed to converge. Carries what was reached.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double best_value, long iterations)
        : Error(what), best_value(best_value), iterations(iterations) {}

    double best_value;
    long iterations;
};

} // namespace bellbound
