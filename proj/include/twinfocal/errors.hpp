#pragma once

#include <stdexcept>
#include <string>

namespace twinfocal {

// Invalid instrument, sample or run configuration. CLI exit status 2.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Quadrature non-convergence, empty scans and similar. CLI exit status 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A search bracket or scan range that does not contain the requested feature.
class RangeError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// File output failures. CLI exit status 4.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace twinfocal
