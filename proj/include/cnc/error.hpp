#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cnc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Zero inversion, operands from different fields, bad field parameters.
class FieldError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// I + K(z) + K(z)^2 + ... has no finite coefficient expansion.
class NotExpandableError : public Error {
public:
    using Error::Error;
};

/// I - K_0 is singular, so the local kernels do not pin down unique global kernels.
class NotNormalError : public Error {
public:
    using Error::Error;
};

/// The encoding topology w.r.t. K_0 has a cycle; no causal per-slot schedule exists.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

class NotDecodableError : public Error {
public:
    using Error::Error;
};

/// A truncated series is too short for the requested computation.
class HorizonError : public Error {
public:
    using Error::Error;
};

/// Unknown node, channel or sink.
class LookupError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace cnc
