#pragma once

#include <stdexcept>
#include <string>

namespace adscausal {

struct InvalidDimension : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct AlgebraMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotUnit : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
// Internal inconsistency in the construction: a bug, never user error.
struct NormalizationFailure : std::logic_error {
    using std::logic_error::logic_error;
};
struct ResidualComponent : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConsistencyFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InconclusiveNearBoundary : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoCrossing : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Degenerate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace adscausal
