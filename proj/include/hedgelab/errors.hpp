#pragma once

#include <stdexcept>

namespace hedgelab {

// Raised for filesystem problems so the CLI can map them to a distinct
// exit code (3) instead of the generic usage error (2).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hedgelab
