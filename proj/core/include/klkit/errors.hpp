#pragma once

#include <stdexcept>
#include <string>

namespace klkit {

/// Input outside the mathematical domain of an operation (poles, invalid
/// parameters, violated bound preconditions).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical method could not reach its requested accuracy. Carries the
/// best value found and the achieved error estimate.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double value, double error_estimate)
      : std::runtime_error(what), value_(value), error_(error_estimate) {}

  double value() const noexcept { return value_; }
  double error_estimate() const noexcept { return error_; }

 private:
  double value_;
  double error_;
};

}  // namespace klkit
