#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace lincsp {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numeric parameter (k, d, ell, n, ...) is outside its admissible range.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A constraint or CSP violates a structural invariant at construction.
class InvalidCspError : public Error {
public:
    using Error::Error;
};

class MissingVariableError : public Error {
public:
    explicit MissingVariableError(std::uint32_t var)
        : Error("assignment does not define variable " + std::to_string(var)), var_(var) {}

    std::uint32_t var() const noexcept { return var_; }

private:
    std::uint32_t var_;
};

/// An operation's documented precondition does not hold for its input.
/// Carries the offending constraint pair or count when there is one.
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what,
                               std::optional<std::pair<std::size_t, std::size_t>> witness = std::nullopt,
                               std::optional<std::size_t> count = std::nullopt)
        : Error(what), witness_(witness), count_(count) {}

    const std::optional<std::pair<std::size_t, std::size_t>>& witness() const noexcept { return witness_; }
    const std::optional<std::size_t>& count() const noexcept { return count_; }

private:
    std::optional<std::pair<std::size_t, std::size_t>> witness_;
    std::optional<std::size_t> count_;
};

/// Raised when a guarantee that holds on every valid input fails. Indicates a bug.
class InvariantError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class UnsupportedDomainError : public Error {
public:
    using Error::Error;
};

} // namespace lincsp
