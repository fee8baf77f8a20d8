#pragma once

#include <stdexcept>

namespace bergman {

// Base class for failures of numeric machinery (tolerances, iteration
// caps on well-formed inputs). Input validation uses std::invalid_argument.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An adaptive rule exhausted its budget before reaching the requested
// tolerance.
struct ToleranceError : NumericError {
    using NumericError::NumericError;
};

// An iterative procedure hit its safety cap. Signals degenerate input
// (NaN, absurd magnitudes), not a mathematical failure.
struct IterationLimitError : NumericError {
    using NumericError::NumericError;
};

}
