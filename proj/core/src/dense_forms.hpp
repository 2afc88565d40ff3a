#pragma once

// Dense matrices of the discrete quadratic forms; internal to the core library.

#include <Eigen/Dense>

#include "waveguard/grid.hpp"
#include "waveguard/state_space.hpp"

namespace waveguard::detail {

/// Stiffness matrix of a(., .): tridiagonal, (1/dx) * [1 -1; -1 1] per cell.
inline Eigen::MatrixXd stiffness_matrix(const Grid& grid) {
  const auto n = static_cast<Eigen::Index>(grid.n_nodes());
  const double inv_dx = 1.0 / grid.dx();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    a(j, j) += inv_dx;
    a(j + 1, j + 1) += inv_dx;
    a(j, j + 1) -= inv_dx;
    a(j + 1, j) -= inv_dx;
  }
  return a;
}

/// Pivot-space mass: trapezoid weights plus the point evaluation at x = 0.
inline Eigen::VectorXd pivot_mass(const Grid& grid) {
  const auto n = static_cast<Eigen::Index>(grid.n_nodes());
  Eigen::VectorXd m(n);
  for (Eigen::Index j = 0; j < n; ++j) m(j) = grid.trapezoid_weight(static_cast<std::size_t>(j));
  m(0) += 1.0;
  return m;
}

/// Forms on the stacked vector X = [u; v] of length 2(N+1):
///   energy(X) = 1/2 X^T energy_form X,  ||X||_H^2 = X^T gram X.
struct StackedForms {
  Eigen::MatrixXd energy_form;
  Eigen::MatrixXd gram;
};

inline StackedForms stacked_forms(const Grid& grid) {
  const auto n = static_cast<Eigen::Index>(grid.n_nodes());
  const Eigen::MatrixXd a = stiffness_matrix(grid);
  const Eigen::VectorXd m = pivot_mass(grid);

  StackedForms f{Eigen::MatrixXd::Zero(2 * n, 2 * n), Eigen::MatrixXd::Zero(2 * n, 2 * n)};
  f.energy_form.topLeftCorner(n, n) = a;
  f.energy_form.bottomRightCorner(n, n) = m.asDiagonal();
  f.gram.topLeftCorner(n, n) = a;
  f.gram.topLeftCorner(n, n).diagonal() += m;
  f.gram.bottomRightCorner(n, n) = m.asDiagonal();
  return f;
}

inline Eigen::VectorXd stack(const FieldState& s) {
  const auto n = static_cast<Eigen::Index>(s.u.size());
  Eigen::VectorXd x(2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    x(j) = s.u[static_cast<std::size_t>(j)];
    x(n + j) = s.v[static_cast<std::size_t>(j)];
  }
  return x;
}

}  // namespace waveguard::detail
