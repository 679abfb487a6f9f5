#pragma once

#include <stdexcept>
#include <string>

namespace rescuefx {

// Bad arguments or model-violating parameter sets.
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Estimation impossible or numerically meaningless on this data
// (near-total truncation, empty cells, zero variance, ...).
struct degeneracy_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input files / datasets that fail structural validation.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem / stream failures.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace rescuefx
