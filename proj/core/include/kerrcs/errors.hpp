#pragma once

#include <stdexcept>
#include <string>

namespace kerrcs {

/// Invalid argument outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A computed quantity violates an invariant it must satisfy by construction
/// (normalization, positivity, sum rules). Signals an assembly bug rather than
/// bad input.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical procedure failed to reach its requested tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}

  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace kerrcs
