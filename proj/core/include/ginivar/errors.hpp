#pragma once

#include <stdexcept>

namespace ginivar {

// Failure classes; the CLI maps them onto exit codes (validation 2,
// numerical 3, io 4).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ginivar
