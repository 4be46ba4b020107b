#pragma once

#include <stdexcept>
#include <string>

namespace oqsim {

// Error taxonomy. At the CLI, configuration problems exit with code 2 and
// numerical degeneracies with code 3.

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Activated-set enumeration would exceed the configured budget.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A per-realization simulation of kappa gate steps would exceed the cap.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Statevector norm left its tolerance band; signals numerical misuse
// (e.g. error weights outside [0, 1/2]).
struct NormDrift : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fewer than two curve points inside the usable fit band.
struct InsufficientPoints : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Average success probability at or below 1/2; the sample-complexity
// factor is infinite.
struct DegenerateOracle : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Alternating series did not enter its decreasing regime within j_max terms.
struct NonConvergent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace oqsim
