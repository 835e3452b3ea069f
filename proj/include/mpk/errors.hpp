#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mpk {

// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside a function's mathematical domain.
class DomainError : public Error {
public:
    using Error::Error;
};

class DivisionByZeroError : public DomainError {
public:
    DivisionByZeroError() : DomainError("division by zero") {}
    explicit DivisionByZeroError(const std::string& what) : DomainError(what) {}
};

// Polynomial division left a nonzero remainder where exactness was required.
class InexactDivisionError : public Error {
public:
    using Error::Error;
};

// Rejected input text. offset() is the 1-based byte position of the offending
// token; expected() describes what the parser would have accepted there.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t offset, std::string expected)
        : Error(message + " (offset " + std::to_string(offset) + ")"),
          offset_(offset),
          expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

class UnknownIdentifierError : public ParseError {
public:
    UnknownIdentifierError(const std::string& name, std::size_t offset)
        : ParseError("unknown identifier '" + name + "'", offset, "declared variable or function name") {}
};

// An expression falls outside the grammar a routine supports. subterm() is the
// rendering of the offending subexpression.
class UnsupportedExpressionError : public Error {
public:
    UnsupportedExpressionError(const std::string& message, std::string subterm)
        : Error(message + ": " + subterm), subterm_(std::move(subterm)) {}

    const std::string& subterm() const noexcept { return subterm_; }

private:
    std::string subterm_;
};

class UnboundVariableError : public Error {
public:
    explicit UnboundVariableError(const std::string& name)
        : Error("unbound variable '" + name + "'") {}
};

// An integrand evaluated to NaN; abscissa() is where.
class NanError : public Error {
public:
    explicit NanError(double abscissa)
        : Error("integrand evaluated to NaN at x = " + std::to_string(abscissa)),
          abscissa_(abscissa) {}

    double abscissa() const noexcept { return abscissa_; }

private:
    double abscissa_;
};

}  // namespace mpk
