#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace polypot {

/// Base class for all polypot errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter (dimension, degree, set kind, precision request) is outside
/// the supported range.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// An argument violates a documented precondition.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Evaluation left the finite domain (NaN/Inf where a finite value is required).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A factorization found the input numerically rank-deficient at the
/// requested precision. The message names the offending column.
class PrecisionError : public Error {
public:
    using Error::Error;
};

/// An iterative method failed to converge; message carries diagnostics.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Structural validation of a config or file failed. Collects every
/// offending field so callers can report them all at once.
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& msg, std::vector<std::string> fields = {})
        : Error(msg), fields_(std::move(fields)) {}
    const std::vector<std::string>& fields() const { return fields_; }

private:
    std::vector<std::string> fields_;
};

} // namespace polypot
