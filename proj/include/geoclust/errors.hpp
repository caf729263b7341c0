#pragma once

#include <stdexcept>
#include <string>

namespace geoclust {

/// Thrown when a caller violates an operation precondition (bad dimensions,
/// empty reference sets, out-of-range parameters). Maps to CLI exit code 3.
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a verified invariant fails at runtime (a lemma witness is
/// missing, a grouping runs out of surplus). Maps to CLI exit code 2.
struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace geoclust
