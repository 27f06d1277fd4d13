#pragma once

#include <stdexcept>
#include <string>

namespace rigidity {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// Invalid caller-supplied input: bad parameters, malformed files, shape mismatches.
class InputError : public Error {
public:
    using Error::Error;
};

// Malformed text input; carries the 1-based line number of the offending line.
class ParseError : public InputError {
public:
    ParseError(int line, const std::string& what_arg)
        : InputError("line " + std::to_string(line) + ": " + what_arg), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

// Certificate/witness stream violates the documented JSON schema.
class SchemaError : public InputError {
public:
    using InputError::InputError;
};

// A mathematical hypothesis of the requested operation does not hold
// (connectivity too low, degree too small, graph complete, ...).
class HypothesisError : public Error {
public:
    using Error::Error;
};

// A numerical construction or self-check failed (retry budget exhausted,
// broken intermediate data, fail-closed verification).
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace rigidity
