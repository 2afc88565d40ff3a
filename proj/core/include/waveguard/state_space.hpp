#pragma once

// Discrete energy space H = V x H_pivot for the wave equation with a
// dynamic boundary at x = 0.
//
// A state is the pair [u, v] sampled on the grid nodes. The boundary value
// u(0) and the boundary velocity theta = v(0) are not stored separately: they
// are u[0] and v[0]. Quadrature conventions:
//   * L2 products use the trapezoid rule;
//   * the stiffness form a(u1, u2) uses cell differences (midpoint rule);
//   * the H-inner product adds the point terms u1(0) u2(0) and v1(0) v2(0).
// With these choices the energy is exactly the quadratic form that the
// leapfrog scheme balances (see solver.hpp).

#include <span>
#include <vector>

#include "waveguard/grid.hpp"

namespace waveguard {

struct FieldState {
  std::vector<double> u;  ///< displacement at nodes
  std::vector<double> v;  ///< velocity at nodes; v[0] is the boundary velocity theta

  static FieldState zeros(const Grid& grid);
  static FieldState constant(const Grid& grid, double value);
};

/// Throws ContractViolation unless u, v have N+1 finite entries.
void require_conforming(const FieldState& state, const Grid& grid);

struct EnergyBreakdown {
  double potential = 0.0;         ///< 1/2 a(u, u)
  double kinetic = 0.0;           ///< 1/2 int |v|^2 (trapezoid)
  double boundary_kinetic = 0.0;  ///< 1/2 |v(0)|^2
  double total = 0.0;
};

/// Energy level E >= 0 defining the sublevel set {X : energy(X) <= E}.
class SublevelSetSpec {
 public:
  explicit SublevelSetSpec(double level_E);
  double level() const noexcept { return level_; }

 private:
  double level_;
};

double trapezoid(std::span<const double> f, const Grid& grid);
double trapezoid_product(std::span<const double> f, std::span<const double> g, const Grid& grid);

/// sum_j (du1_j / dx)(du2_j / dx) dx over the N cells.
double bilinear_a(std::span<const double> u1, std::span<const double> u2, const Grid& grid);

EnergyBreakdown energy(const FieldState& state, const Grid& grid);

/// (1/L) * trapezoid(u).
double mean_functional(const FieldState& state, const Grid& grid);

/// Discrete H-inner product: L2(u) + u(0) term + a-form + L2(v) + v(0) term.
double h_inner(const FieldState& x, const FieldState& y, const Grid& grid);
double h_norm_squared(const FieldState& x, const Grid& grid);

/// Removes the H-orthogonal component along e = [1, 0]. Energy is unchanged.
FieldState project_orthogonal_to_constants(const FieldState& state, const Grid& grid);

/// sqrt(K * {energy(X) - E}^+); upper bound on dist(X, {energy <= E}) when K
/// comes from the distance-lemma constant of the same grid.
double dist_to_sublevel_bound(const FieldState& state, const SublevelSetSpec& spec, const Grid& grid,
                              double K);

/// Exact H-distance to {energy <= E}. Dense generalized eigenproblem plus a
/// secular-equation root find; requires n_cells <= kMaxExactDistanceCells.
double dist_to_sublevel_exact(const FieldState& state, const SublevelSetSpec& spec, const Grid& grid);

inline constexpr int kMaxExactDistanceCells = 64;

/// Exact H-distance to the stationary set {energy = 0} = {[c, 0]}.
double dist_to_stationary(const FieldState& state, const Grid& grid);

}  // namespace waveguard
