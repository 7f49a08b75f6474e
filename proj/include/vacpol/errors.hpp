#pragma once

#include <stdexcept>
#include <string>

namespace vacpol {

/// An iterative numerical procedure (quadrature, bisection, eigensolver)
/// failed to reach its requested tolerance.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid run configuration, command line, or input table file.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A theorem-level consistency check evaluated to false.
struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace vacpol
