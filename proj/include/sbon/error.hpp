#pragma once

#include <stdexcept>
#include <string>

namespace sbon {

// Base of every error raised by the library. The CLI maps any of these to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed PGM / raw grid input. The message names the byte offset.
class ParseError : public Error {
public:
    using Error::Error;
};

// A value outside the range its container admits (pixel above maxval, integer above 2^B - 1).
class RangeError : public Error {
public:
    using Error::Error;
};

// Grid dimensions incompatible with the requested decomposition depth.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Mismatched lengths or shapes between operands.
class StructuralError : public Error {
public:
    using Error::Error;
};

// Non-finite or otherwise unusable data.
class DataError : public Error {
public:
    using Error::Error;
};

// Metric undefined for this input (zero variance, empty edge map, ...).
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace sbon
