#pragma once

#include <stdexcept>
#include <string>

namespace ghd {

// Malformed or out-of-range caller input (length mismatch, r > n, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A participant broke the rules of the game: read the other party's input,
// handed over a malformed message, behaved non-deterministically.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameters for which a protocol's guarantee is void.
class HypothesisViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SizeLimitExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

class ConstructionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ghd
