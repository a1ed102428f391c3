#pragma once

#include <stdexcept>
#include <string>

namespace levyfp {

// Numerical failures map to CLI exit status 3; input failures
// (ParseError, ValidationError) map to exit status 2.

/// Argument outside the open domain of the Laplace exponent.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A defining equation has no root in the admissible interval.
class NoRootError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A slope v lies outside the range where the inverse of psi' exists.
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

/// The requested constant has no closed form for this model class.
class UnsupportedModel : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A model violates one of its admissibility invariants.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed configuration text.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

} // namespace levyfp
