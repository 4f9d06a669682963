#pragma once

#include <stdexcept>
#include <string>

namespace semcom {

/// Invalid system parameters or experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A serialized document is missing fields or has the wrong schema version.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A deserialized scenario violates one of the scenario invariants.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every permutation of the payoff matrix touches a masked cell.
class NoFeasibleMatching : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace semcom
