#pragma once

#include <stdexcept>
#include <string>

namespace inatt {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Hypothesis of a constructive result does not hold for the given inputs.
class PreconditionError : public std::logic_error {
public:
  explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

/// A value object violates one of its structural invariants.
class InvariantError : public std::logic_error {
public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

/// A bounded search terminated without finding what it was looking for.
class SearchFailure : public std::runtime_error {
public:
  explicit SearchFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace inatt
