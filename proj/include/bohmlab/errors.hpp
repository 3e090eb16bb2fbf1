#pragma once

#include <stdexcept>
#include <string>

namespace bohmlab {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (NaN input, pole, ...).
struct DomainError : Error {
    using Error::Error;
};

// A numerical procedure failed to reach its tolerance (series did not converge,
// value overflowed, ...).
struct EvalError : Error {
    using Error::Error;
};

// Caller broke an interface contract (mismatched grids, bad derivative order, ...).
struct UsageError : Error {
    using Error::Error;
};

// Field is unusable for the requested operation (all-zero amplitude, fully masked).
struct DegenerateFieldError : Error {
    using Error::Error;
};

// Propagator produced non-finite values; carries the step index in the message.
struct DivergenceError : Error {
    DivergenceError(const std::string& what, std::size_t step)
        : Error(what), step_index(step) {}
    std::size_t step_index;
};

// Quadrature path crosses a zero of the density (Eq. for V has a pole there).
struct SingularIntegralError : Error {
    SingularIntegralError(const std::string& what, double where)
        : Error(what), location(where) {}
    double location;
};

// Morse parameters admit no bound state.
struct NoBoundStateError : Error {
    using Error::Error;
};

// Family coefficients violate the f' = (a x + b)^2 >= 0 structure.
struct InvalidFamilyError : Error {
    using Error::Error;
};

// Config file / parameter validation failure; message names the offending field.
struct ValidationError : Error {
    using Error::Error;
};

} // namespace bohmlab
