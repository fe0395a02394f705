#pragma once

#include <stdexcept>
#include <string>

namespace cys {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A numeric procedure could not reach the requested accuracy
/// (truncation order too low, tail estimate too large, no convergence).
class NumericError : public Error {
public:
    using Error::Error;
};

/// A constant could not be identified (no rational, surd or integer relation).
class RecognitionError : public Error {
public:
    using Error::Error;
};

/// Malformed input text. Carries a 1-based line/column position.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace cys
