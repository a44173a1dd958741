#pragma once

#include <stdexcept>
#include <string>

namespace varexp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Inputs live on different grids.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

// A theorem or lemma was asked to run outside its parameter region.
class HypothesisViolation : public Error {
 public:
  explicit HypothesisViolation(std::string condition)
      : Error("hypothesis violated: " + condition), condition_(std::move(condition)) {}
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

// Iteration diverged, quadrature self-check failed, or similar.
class NumericalAbort : public Error {
 public:
  using Error::Error;
};

class AliasingError : public NumericalAbort {
 public:
  using NumericalAbort::NumericalAbort;
};

}  // namespace varexp
