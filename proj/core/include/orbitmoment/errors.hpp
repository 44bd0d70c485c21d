#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace orbitmoment {

// Malformed input, shape mismatch, violated precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration or term count would exceed its configured limit.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what, std::optional<int> k = std::nullopt)
      : std::runtime_error(what), k_(k) {}

  // The moment order that triggered the failure, when one applies.
  std::optional<int> k() const { return k_; }

 private:
  std::optional<int> k_;
};

}  // namespace orbitmoment
