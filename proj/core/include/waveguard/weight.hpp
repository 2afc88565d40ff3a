#pragma once

namespace waveguard {

/// Affine multiplier weight rho(x) = rho0 + (rhoL - rho0) x / L.
class WeightRho {
 public:
  /// Throws ContractViolation unless 0 < rho0 < rhoL and length > 0.
  WeightRho(double rho0, double rhoL, double length);

  double rho0() const noexcept { return rho0_; }
  double rhoL() const noexcept { return rhoL_; }
  double length() const noexcept { return length_; }
  double slope() const noexcept { return (rhoL_ - rho0_) / length_; }
  double at(double x) const noexcept { return rho0_ + slope() * x; }
  /// sup |rho| on [0, L], i.e. rho(L).
  double sup() const noexcept { return rhoL_; }

  friend bool operator==(const WeightRho&, const WeightRho&) = default;

 private:
  double rho0_;
  double rhoL_;
  double length_;
};

}  // namespace waveguard
