#pragma once

#include <stdexcept>
#include <string>

namespace clamp {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Tensor shapes do not conform to the requested operation.
struct ShapeError : Error {
    using Error::Error;
};

/// An operation produced (or was fed) a non-finite value, or an index
/// fell outside its valid range.
struct NumericError : Error {
    using Error::Error;
};

/// Malformed input text (CIF, manifest, symmetry expression, ...).
struct ParseError : Error {
    using Error::Error;
};

/// Dataset-level failure: unreadable files, empty splits, bad records.
struct DataError : Error {
    using Error::Error;
};

/// Invalid or unknown configuration keys/values.
struct ConfigError : Error {
    using Error::Error;
};

/// Filesystem failure.
struct IoError : Error {
    using Error::Error;
};

}  // namespace clamp
