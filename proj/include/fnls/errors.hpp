#pragma once

#include <stdexcept>
#include <string>

namespace fnls {

// Bad user-facing configuration (CLI flags, config files, out-of-range
// parameters). The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid data fed to a numerical routine (non-finite samples, empty fields,
// mismatched lengths).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A guard against accidentally running a brute-force oracle at a size where
// it would take hours.
struct CostError : std::runtime_error {
  explicit CostError(const std::string& msg) : std::runtime_error(msg) {}
};

// The integrator produced a non-finite field.
struct InstabilityError : std::runtime_error {
  explicit InstabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fnls
