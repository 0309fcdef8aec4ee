#pragma once

#include <stdexcept>
#include <string>

namespace kzb {

// Base of everything the library throws on bad input or a broken contract.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Preconditions on arguments (m < 2, cutoff <= 0, p | N, ...).
struct DomainError : Error {
  using Error::Error;
};

// Mixing elements built on different alphabets, cutoffs or coefficient domains.
struct MismatchError : Error {
  using Error::Error;
};

struct NotLieError : Error {
  using Error::Error;
};

struct NotGroupLikeError : Error {
  using Error::Error;
};

struct ConstantTermError : Error {
  using Error::Error;
};

// Numeric failures: divergence, missing regularization, reconstruction failure.
struct NumericError : Error {
  using Error::Error;
};

// An internal identity that must hold did not; names the invariant.
struct ContractViolation : Error {
  explicit ContractViolation(const std::string& invariant, const std::string& detail = {})
      : Error(detail.empty() ? invariant : invariant + ": " + detail), name(invariant) {}
  std::string name;
};

}  // namespace kzb
