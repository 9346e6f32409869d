#pragma once

#include <stdexcept>
#include <string>

namespace pn {

/// Bad arguments: violated preconditions, malformed input, non-invertible residues.
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A configured budget (coefficient cap, AP search limit, region count) was exceeded.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The requested operation is not defined for this input (e.g. table_pqr on a
/// non-generic triple); the message names the fallback when one exists.
struct unsupported_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A construction searched its whole window without finding the object the
/// underlying existence argument guarantees; indicates a bug, fatal in tests.
struct construction_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Internal consistency violated (nonzero division remainder, unclassifiable
/// triple, overflow in an exact path). Must never fire.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace pn
