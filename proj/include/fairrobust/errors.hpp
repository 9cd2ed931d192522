#pragma once

#include <stdexcept>
#include <string>

namespace fairrobust {

// Bad input: malformed CSV/config, unknown columns, inconsistent shapes.
// The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: diverging trainer, infeasible LP where one must exist.
// The CLI maps this to exit code 3.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fairrobust
