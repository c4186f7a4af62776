#pragma once

#include <stdexcept>
#include <string>

namespace voweltrace {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file (bad RIFF chunk, broken CSV row, ...).
struct FormatError : Error {
    using Error::Error;
};

// Structurally valid file in an encoding we do not handle.
struct UnsupportedFormatError : FormatError {
    using FormatError::FormatError;
};

// A precondition on a call argument was violated.
struct ArgumentError : Error {
    using Error::Error;
};

// Named entity (tier, category, file) not found.
struct LookupError : Error {
    using Error::Error;
};

// Value or interval outside the valid domain.
struct RangeError : Error {
    using Error::Error;
};

// Numerical routine failed to produce a usable result.
struct NumericError : Error {
    using Error::Error;
};

// A data record failed validation.
struct ValidationError : Error {
    using Error::Error;
};

// Inconsistent or incomplete configuration.
struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

// Text parse failure; carries the 1-based source line.
struct ParseError : Error {
    ParseError(const std::string& message, long line)
        : Error(message + " (line " + std::to_string(line) + ")"), line(line) {}
    long line;
};

}  // namespace voweltrace
