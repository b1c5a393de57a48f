#pragma once

#include <stdexcept>
#include <string>

namespace cperc {

// Domain preconditions violated (bad alphabet size, malformed input, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Coordinate outside a sequence or rectangle.
struct BoundsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Checked arithmetic left the representable range. Never silently wraps.
struct OverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A construction or query has no answer at the given scales.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A rejection sampler ran out of attempts.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed file contents.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cperc
