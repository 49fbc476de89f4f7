#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace psdrec {

/// Caller broke a precondition (shape mismatch, out-of-range parameter).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative kernel failed to converge within its cap.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A solver iterate became non-finite or blew past the divergence guard.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::size_t iteration)
      : std::runtime_error(what), iteration_(iteration) {}
  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

}  // namespace psdrec
