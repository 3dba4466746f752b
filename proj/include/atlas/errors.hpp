#pragma once

#include <stdexcept>
#include <string>

namespace atlas {

// Malformed or contract-violating input (bad JSONL, missing keys,
// invariant violations). CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Data that is structurally fine but unusable for the requested
// computation (constant attribute, empty bin, zero variance).
// CLI maps this to exit code 3.
struct DegenerateDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace atlas
