#pragma once

#include <stdexcept>
#include <string>

namespace levyhunt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// invalid construction input (non-symmetric A, negative mass, atom at origin, ...)
struct InvalidInput : Error {
    using Error::Error;
};

// non-finite value met while evaluating the exponent or a quadrature
struct EvalError : Error {
    using Error::Error;
};

// operation not supported by the given representation (e.g. exponent-only process)
struct CapabilityError : Error {
    using Error::Error;
};

// a required integral diverges
struct IntegrabilityError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace levyhunt
