#include "waveguard/weight.hpp"

#include <cmath>
#include <string>

#include "waveguard/errors.hpp"

namespace waveguard {

WeightRho::WeightRho(double rho0, double rhoL, double length) : rho0_(rho0), rhoL_(rhoL), length_(length) {
  if (!(length > 0.0) || !std::isfinite(length)) throw ContractViolation("weight: length must be positive");
  if (!(rho0 > 0.0) || !(rhoL > rho0) || !std::isfinite(rhoL)) {
    throw ContractViolation("weight must be positive and increasing: rho0 = " + std::to_string(rho0) +
                            ", rhoL = " + std::to_string(rhoL));
  }
}

}  // namespace waveguard
