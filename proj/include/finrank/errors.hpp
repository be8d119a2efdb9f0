#pragma once

#include <stdexcept>
#include <string>

namespace finrank {

// Base class for all structured failures raised by the library. Callers that
// need to distinguish outcomes catch the specific subclass; the CLI maps any
// Error to exit code 1 (experiment failure) or 2 (spec/validation problems).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Mismatched ambient dimensions, wrong polynomial family, index out of range.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

// Invalid construction parameters (empty schedules, non-unit vectors, ...).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// A Fourier-series weight was asked for data beyond its stored truncation.
class TruncationError : public Error {
public:
    TruncationError() : Error("truncation exceeded") {}
    explicit TruncationError(const std::string& msg) : Error(msg) {}
};

// Frequency-side quadrature cannot reach the requested scale R.
class BandwidthError : public Error {
public:
    BandwidthError() : Error("bandwidth insufficient") {}
    explicit BandwidthError(const std::string& msg) : Error(msg) {}
};

// The recovery loop could not represent the weight as a point distribution
// within the given bounds.
class RecoveryError : public Error {
public:
    explicit RecoveryError(const std::string& msg) : Error(msg) {}
};

// A weight family does not support the requested operation.
class UnsupportedFamilyError : public Error {
public:
    explicit UnsupportedFamilyError(const std::string& msg) : Error(msg) {}
};

}  // namespace finrank
