#pragma once

#include <stdexcept>
#include <string>

namespace duflo {

/// Bad input: malformed files, unknown names, incompatible truncation parameters.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A hard structural invariant failed (d² ≠ 0, non-invariant input where one is required).
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace duflo
