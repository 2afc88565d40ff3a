#include "waveguard/oracle.hpp"

#include <algorithm>

#include "waveguard/errors.hpp"

namespace waveguard {

FieldState characteristics_oracle(const PulseProfile& w, const Grid& grid, double t) {
  if (!(t >= 0.0)) throw ContractViolation("oracle time must be >= 0");
  if (!w.negligible_at_ends(grid.length())) {
    throw ContractViolation("oracle requires a profile that is constant (negligible) near both ends");
  }
  FieldState s = FieldState::zeros(grid);
  for (std::size_t j = 0; j < s.u.size(); ++j) {
    const double xi = grid.x(j) - t;
    s.u[j] = w.value(std::max(xi, 0.0));
    s.v[j] = xi > 0.0 ? -w.derivative(xi) : 0.0;
  }
  return s;
}

}  // namespace waveguard
