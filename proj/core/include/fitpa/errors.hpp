#pragma once

#include <stdexcept>
#include <string>

namespace fitpa {

// Thrown for invalid model parameters, malformed config files, and invalid
// CLI argument combinations. Maps to process exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInitialGraph : ConfigError {
  using ConfigError::ConfigError;
};

// A grid cell contained more than one sign change after refinement; the
// caller must raise grid_n.
struct UnresolvedRoot : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StateSpaceTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation applied to the wrong fitness model (e.g. Lyapunov monitor on a
// non-additive run, urn path on a model it does not cover).
struct WrongModel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A trajectory lacks a record at a step the caller requires exactly.
struct MissingRecord : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Internal verification failed (cmd_verify). Maps to process exit code 3.
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fitpa
