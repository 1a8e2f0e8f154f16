#pragma once

#include <stdexcept>
#include <string>

namespace fricke {

// Caller violated a documented precondition (bad order, bad index, bad flag).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DivisionByZeroError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The requested result cannot be certified at the available truncation.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// j-reduction left a nonzero residual.
class NotAJPolynomialError : public PrecisionError {
public:
    using PrecisionError::PrecisionError;
};

// An exact identity that must hold by construction failed.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A CM value required to be nonzero vanished numerically.
class ZeroValueError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fricke
