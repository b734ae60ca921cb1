#pragma once

#include <stdexcept>
#include <string>

namespace gdr {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two operands live in spaces of different dimension.
class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::size_t expected, std::size_t got, const std::string& where)
        : Error(where + ": dimension mismatch (expected " + std::to_string(expected) + ", got " +
                std::to_string(got) + ")") {}
};

/// A parameter is outside its admissible range or a construction invariant fails.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An iteration produced a non-finite value or could not be completed numerically.
class NumericAbort : public Error {
public:
    using Error::Error;
};

/// The requested size exceeds what a brute-force routine supports.
class UnsupportedSize : public Error {
public:
    using Error::Error;
};

}  // namespace gdr
