#pragma once

// Exact solution of the transparent case (g = identity, F = 0) for
// right-moving data u = w, v = -w': u(x, t) = w(x - t), with w extended to the
// left by its (negligible) value at x = 0. The right end absorbs the packet
// exactly and the left end never sees a disturbance.

#include "waveguard/grid.hpp"
#include "waveguard/initial_data.hpp"
#include "waveguard/state_space.hpp"

namespace waveguard {

/// Throws ContractViolation if t < 0 or the profile is not negligible at the
/// ends of (0, L).
FieldState characteristics_oracle(const PulseProfile& w, const Grid& grid, double t);

}  // namespace waveguard
