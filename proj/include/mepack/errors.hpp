#pragma once

#include <stdexcept>
#include <string>

namespace mepack {

// Raised when a numerical guard trips: ensemble escape, grid leakage,
// energy-drift instability, iteration caps. Never swallowed internally;
// the CLI maps it to its own exit code.
class numerics_error : public std::runtime_error {
public:
    explicit numerics_error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

}  // namespace mepack
