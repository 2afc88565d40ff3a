#pragma once

#include <cstddef>

namespace waveguard {

/// Uniform nodal grid on (0, L) with nodes x_j = j * dx, j = 0..N.
class Grid {
 public:
  /// Throws ContractViolation unless length > 0 (finite) and n_cells >= 4.
  Grid(double length, int n_cells);

  double length() const noexcept { return length_; }
  int n_cells() const noexcept { return n_cells_; }
  std::size_t n_nodes() const noexcept { return static_cast<std::size_t>(n_cells_) + 1; }
  double dx() const noexcept { return dx_; }

  double x(std::size_t j) const noexcept;
  /// Trapezoid weight of node j (dx/2 at the ends, dx inside).
  double trapezoid_weight(std::size_t j) const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double length_;
  int n_cells_;
  double dx_;
};

}  // namespace waveguard
