#pragma once

#include <stdexcept>
#include <string>

namespace fnls {

/// Malformed or inconsistent experiment configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A frequency-lattice scan would exceed its operation budget.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Non-finite values or a failed internal consistency check at run time.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fnls
