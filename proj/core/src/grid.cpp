#include "waveguard/grid.hpp"

#include <cmath>
#include <string>

#include "waveguard/errors.hpp"

namespace waveguard {

Grid::Grid(double length, int n_cells) : length_(length), n_cells_(n_cells), dx_(0.0) {
  if (!std::isfinite(length) || length <= 0.0) {
    throw ContractViolation("grid length must be positive and finite, got " + std::to_string(length));
  }
  if (n_cells < 4) {
    throw ContractViolation("grid needs n_cells >= 4, got " + std::to_string(n_cells));
  }
  dx_ = length / n_cells;
}

double Grid::x(std::size_t j) const noexcept {
  // Last node pinned to L exactly.
  if (j == static_cast<std::size_t>(n_cells_)) return length_;
  return static_cast<double>(j) * dx_;
}

double Grid::trapezoid_weight(std::size_t j) const noexcept {
  return (j == 0 || j == static_cast<std::size_t>(n_cells_)) ? 0.5 * dx_ : dx_;
}

}  // namespace waveguard
