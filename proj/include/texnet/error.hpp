#pragma once

#include <stdexcept>
#include <string>

namespace texnet {

/// Base class for all texnet errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid argument or configuration value.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// File exists but is not a supported or well-formed raster format.
class FormatError : public IoError {
public:
    using IoError::IoError;
};

/// Dataset directory layout problems (missing classes, empty classes, ...).
class DatasetError : public Error {
public:
    using Error::Error;
};

/// Input too small for the requested operation.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Non-finite inputs, degenerate weights, or failed factorizations.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Malformed CSV or sidecar content.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Data that fails a consistency check (e.g. a feature file whose sidecar
/// hash does not match).
class ValidationError : public Error {
public:
    using Error::Error;
};

} // namespace texnet
