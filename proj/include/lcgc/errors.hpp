#pragma once

#include <stdexcept>
#include <string>

namespace lcgc {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid argument, lag order, or configuration value.
struct InvalidArgumentError : Error {
    using Error::Error;
};

/// Not enough samples for the requested fit window.
struct SampleSizeError : Error {
    using Error::Error;
};

/// An injected residual series does not cover the requested window.
struct AlignmentError : Error {
    using Error::Error;
};

/// Near-linear dependence among regressors, detected via the reciprocal
/// condition number of the Gram matrix.
struct MulticollinearityError : Error {
    MulticollinearityError(double rcond_, const std::string& what_)
        : Error(what_), rcond(rcond_) {}
    double rcond;
};

/// Degenerate noise spec, covariance, or zero residual variance.
struct DegenerateError : Error {
    using Error::Error;
};

/// Simulated AR system has spectral radius >= 1.
struct StationarityError : Error {
    using Error::Error;
};

/// Argument outside a distribution's domain.
struct DomainError : Error {
    using Error::Error;
};

/// Malformed configuration file (unknown keys, missing values).
struct ConfigError : Error {
    using Error::Error;
};

/// Malformed CSV input; carries the 1-based line number.
struct CsvError : Error {
    CsvError(const std::string& what_, int line_)
        : Error(what_ + " (line " + std::to_string(line_) + ")"), line(line_) {}
    int line;
};

}  // namespace lcgc
