#pragma once

#include <stdexcept>
#include <string>

namespace gff2d {

// Bad arguments or configuration supplied by the caller.
struct config_error : std::invalid_argument {
    explicit config_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// A structural guarantee the library relies on failed to hold.  These are
// bugs or genuinely infeasible geometry, never user error.
struct invariant_error : std::logic_error {
    explicit invariant_error(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace gff2d
