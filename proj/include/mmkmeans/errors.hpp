#pragma once

#include <stdexcept>
#include <string>

namespace mmkmeans {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes of two inputs disagree (vector lengths, matrix widths, mask vs data).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A run or dataset configuration is not admissible (k > m, bad family, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Input values violate a data invariant (non-finite entries, label out of range).
class DataError : public Error {
public:
    using Error::Error;
};

/// The requested score is not defined for the given partition.
class UndefinedMetricError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// A result file does not match the dataset it references.
class IntegrityError : public Error {
public:
    using Error::Error;
};

class UnsupportedPlotError : public Error {
public:
    using Error::Error;
};

}  // namespace mmkmeans
