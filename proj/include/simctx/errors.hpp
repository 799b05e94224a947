#pragma once

#include <stdexcept>
#include <string>

namespace simctx {

/// Operands or arguments that do not fit together (mixed semirings, wrong shapes).
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// A documented precondition of an operation does not hold for the input.
class PreconditionError : public std::domain_error {
 public:
  explicit PreconditionError(const std::string& what) : std::domain_error(what) {}
};

/// The operation is not offered for this configuration (semiring, dimension, size cap).
class Unsupported : public std::runtime_error {
 public:
  explicit Unsupported(const std::string& what) : std::runtime_error(what) {}
};

/// A result that should satisfy an invariant by construction does not.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace simctx
