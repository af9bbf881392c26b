#pragma once

#include <stdexcept>
#include <string>

namespace stixel {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A configuration field violates its invariant. `field` names the first offender.
struct InvalidConfig : Error {
    InvalidConfig(std::string field_, const std::string& reason_)
        : Error("invalid config: " + field_ + ": " + reason_), field(std::move(field_)), reason(reason_) {}
    std::string field;
    std::string reason;
};

struct InvalidSpec : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct CorruptHeader : IoError {
    using IoError::IoError;
};

struct UnsupportedFormat : IoError {
    using IoError::IoError;
};

struct NotBinary : IoError {
    using IoError::IoError;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct HeightMismatch : Error {
    using Error::Error;
};

struct ClassCountMismatch : Error {
    using Error::Error;
};

struct EmptyCutSet : Error {
    using Error::Error;
};

struct NoValidPixels : Error {
    using Error::Error;
};

/// Brute-force oracle refuses instances beyond its enumeration budget.
struct TooLarge : Error {
    using Error::Error;
};

}  // namespace stixel
