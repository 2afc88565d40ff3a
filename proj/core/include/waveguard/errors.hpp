#pragma once

#include <stdexcept>
#include <string>

namespace waveguard {

/// Caller broke a documented precondition (dimension mismatch, out-of-range
/// parameter, grid too large for a dense routine, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A hypothesis of the stability results does not hold for the supplied data.
/// condition() carries the short name of the failed condition, e.g.
/// "cond-g: alpha1/(1+alpha2^2) > q".
class HypothesisViolated : public std::runtime_error {
 public:
  HypothesisViolated(std::string condition, const std::string& detail)
      : std::runtime_error(condition + ": " + detail), condition_(std::move(condition)) {}

  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

/// The feedback law admits no sector bound alpha1|s| <= |g(s)| <= alpha2|s|
/// for large |s|.
class NoValidSector : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative numerics (root finding, eigensolver) did not converge.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Not enough data above the floor to fit a decay rate.
class FitUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace waveguard
