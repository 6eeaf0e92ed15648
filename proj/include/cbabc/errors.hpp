#pragma once

#include <stdexcept>
#include <string>

namespace cbabc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration: bad bounds, colony sizes, probabilities, unknown names.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Vector length does not match what an operation requires.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An objective was handed a non-finite input.
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// File could not be read, parsed or written.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace cbabc
