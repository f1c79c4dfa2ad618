#pragma once

#include <stdexcept>
#include <string>

namespace pcaerg {

/// Rejected argument: out-of-range probability, malformed CA code, bad domain.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A Table-1 cell whose denominator vanishes for the given parameter.
class DegenerateDenominator : public std::domain_error {
 public:
  explicit DegenerateDenominator(std::string cell)
      : std::domain_error("degenerate denominator in gamma cell " + cell), cell_(std::move(cell)) {}

  const std::string& cell() const noexcept { return cell_; }

 private:
  std::string cell_;
};

/// A formula that divides by r was called with r = 0.
class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pcaerg
