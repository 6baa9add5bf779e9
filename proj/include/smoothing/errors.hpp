#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace smoothing {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Evaluation left the domain of a function (division by zero, query outside a source set).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An internal invariant failed; indicates a bug or a numerically degenerate input.
class InvariantError : public Error {
public:
    using Error::Error;
};

/// Syntax or name error in an expression, with the byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : Error(message + " at offset " + std::to_string(offset)), offset_(offset)
    {
    }

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Invalid configuration (JSON file or CLI flags); carries the path of the offending field.
class ConfigError : public Error {
public:
    ConfigError(const std::string& field, const std::string& message)
        : Error(field + ": " + message), field_(field)
    {
    }

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

} // namespace smoothing
