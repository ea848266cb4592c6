#pragma once

#include <stdexcept>
#include <string>

namespace eisen {

// Input outside the mathematical domain of an operation.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Operation requires a specific element class (e.g. hyperbolic) and did not get it.
struct classification_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Floating-point breakdown, e.g. a point of the upper half-plane underflowing to y = 0.
struct numeric_degeneracy : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A distance spectrum was queried beyond its certified cutoff.
struct incomplete_spectrum : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A documented precondition was observed to fail during a computation.
struct precondition_violation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace eisen
