#pragma once

#include <stdexcept>
#include <string>

namespace ellconn {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input (malformed JSON, unknown names, bad arguments).
struct InputError : Error {
    using Error::Error;
};

struct DomainError : InputError {
    using InputError::InputError;
};

struct InvalidModel : InputError {
    using InputError::InputError;
};

struct NotElliptic : InputError {
    using InputError::InputError;
};

struct ConstraintUnsolvable : Error {
    using Error::Error;
};

struct NotInSubspace : Error {
    using Error::Error;
};

struct DerivativeUnavailable : Error {
    using Error::Error;
};

struct UnableToSample : Error {
    using Error::Error;
};

struct ExpressionTooDeep : Error {
    using Error::Error;
};

}  // namespace ellconn
