#include "waveguard/state_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "dense_forms.hpp"
#include "waveguard/errors.hpp"

namespace waveguard {

namespace {

void require_length(std::span<const double> f, const Grid& grid, const char* what) {
  if (f.size() != grid.n_nodes()) {
    throw ContractViolation(std::string(what) + ": expected " + std::to_string(grid.n_nodes()) +
                            " samples, got " + std::to_string(f.size()));
  }
}

}  // namespace

FieldState FieldState::zeros(const Grid& grid) {
  return FieldState{std::vector<double>(grid.n_nodes(), 0.0), std::vector<double>(grid.n_nodes(), 0.0)};
}

FieldState FieldState::constant(const Grid& grid, double value) {
  return FieldState{std::vector<double>(grid.n_nodes(), value), std::vector<double>(grid.n_nodes(), 0.0)};
}

void require_conforming(const FieldState& state, const Grid& grid) {
  require_length(state.u, grid, "state.u");
  require_length(state.v, grid, "state.v");
  const auto finite = [](double x) { return std::isfinite(x); };
  if (!std::all_of(state.u.begin(), state.u.end(), finite) ||
      !std::all_of(state.v.begin(), state.v.end(), finite)) {
    throw ContractViolation("state contains non-finite entries");
  }
}

SublevelSetSpec::SublevelSetSpec(double level_E) : level_(level_E) {
  if (!(level_E >= 0.0) || !std::isfinite(level_E)) {
    throw ContractViolation("sublevel energy must be finite and >= 0, got " + std::to_string(level_E));
  }
}

double trapezoid(std::span<const double> f, const Grid& grid) {
  require_length(f, grid, "trapezoid");
  double interior = 0.0;
  for (std::size_t j = 1; j + 1 < f.size(); ++j) interior += f[j];
  return grid.dx() * (interior + 0.5 * (f.front() + f.back()));
}

double trapezoid_product(std::span<const double> f, std::span<const double> g, const Grid& grid) {
  require_length(f, grid, "trapezoid_product");
  require_length(g, grid, "trapezoid_product");
  double interior = 0.0;
  for (std::size_t j = 1; j + 1 < f.size(); ++j) interior += f[j] * g[j];
  return grid.dx() * (interior + 0.5 * (f.front() * g.front() + f.back() * g.back()));
}

double bilinear_a(std::span<const double> u1, std::span<const double> u2, const Grid& grid) {
  require_length(u1, grid, "bilinear_a");
  require_length(u2, grid, "bilinear_a");
  // Each product is formed as (du1 * du2) so swapping arguments is bitwise symmetric.
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < u1.size(); ++j) {
    sum += (u1[j + 1] - u1[j]) * (u2[j + 1] - u2[j]);
  }
  return sum / grid.dx();
}

EnergyBreakdown energy(const FieldState& state, const Grid& grid) {
  require_length(state.u, grid, "energy: u");
  require_length(state.v, grid, "energy: v");
  EnergyBreakdown e;
  e.potential = 0.5 * bilinear_a(state.u, state.u, grid);
  e.kinetic = 0.5 * trapezoid_product(state.v, state.v, grid);
  e.boundary_kinetic = 0.5 * state.v.front() * state.v.front();
  e.total = e.potential + e.kinetic + e.boundary_kinetic;
  return e;
}

double mean_functional(const FieldState& state, const Grid& grid) {
  return trapezoid(state.u, grid) / grid.length();
}

double h_inner(const FieldState& x, const FieldState& y, const Grid& grid) {
  return trapezoid_product(x.u, y.u, grid) + x.u.front() * y.u.front() + bilinear_a(x.u, y.u, grid) +
         trapezoid_product(x.v, y.v, grid) + x.v.front() * y.v.front();
}

double h_norm_squared(const FieldState& x, const Grid& grid) { return h_inner(x, x, grid); }

FieldState project_orthogonal_to_constants(const FieldState& state, const Grid& grid) {
  require_length(state.u, grid, "project: u");
  require_length(state.v, grid, "project: v");
  // <X, e>_H = trapezoid(u) + u(0);  ||e||_H^2 = L + 1.
  const double c = (trapezoid(state.u, grid) + state.u.front()) / (grid.length() + 1.0);
  FieldState out = state;
  for (double& x : out.u) x -= c;
  return out;
}

double dist_to_sublevel_bound(const FieldState& state, const SublevelSetSpec& spec, const Grid& grid,
                              double K) {
  if (!(K > 0.0)) throw ContractViolation("distance-lemma constant K must be positive");
  const double excess = energy(state, grid).total - spec.level();
  return excess > 0.0 ? std::sqrt(K * excess) : 0.0;
}

double dist_to_sublevel_exact(const FieldState& state, const SublevelSetSpec& spec, const Grid& grid) {
  require_conforming(state, grid);
  if (grid.n_cells() > kMaxExactDistanceCells) {
    throw ContractViolation("dist_to_sublevel_exact supports n_cells <= " +
                            std::to_string(kMaxExactDistanceCells));
  }
  const double level = spec.level();
  const double e_state = energy(state, grid).total;
  if (e_state <= level) return 0.0;

  // In the G-orthonormal eigenbasis of (Q, G) the problem separates:
  //   energy(Y) = 1/2 sum kappa_i eta_i^2,  ||X - Y||^2 = sum (xi_i - eta_i)^2.
  // The minimiser is eta_i = xi_i / (1 + m kappa_i) with m >= 0 the multiplier.
  const auto forms = detail::stacked_forms(grid);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(forms.energy_form, forms.gram);
  if (eig.info() != Eigen::Success) throw NumericFailure("generalized eigensolver failed");

  const Eigen::VectorXd x = detail::stack(state);
  const Eigen::VectorXd xi = eig.eigenvectors().transpose() * (forms.gram * x);
  const Eigen::VectorXd& kappa = eig.eigenvalues();
  const double kernel_tol = 1e-12 * kappa.cwiseAbs().maxCoeff();

  if (level == 0.0) {
    double d2 = 0.0;
    for (Eigen::Index i = 0; i < xi.size(); ++i) {
      if (kappa(i) > kernel_tol) d2 += xi(i) * xi(i);
    }
    return std::sqrt(d2);
  }

  const auto secular = [&](double m) {
    double e = 0.0;
    for (Eigen::Index i = 0; i < xi.size(); ++i) {
      if (kappa(i) <= kernel_tol) continue;
      const double s = 1.0 + m * kappa(i);
      e += 0.5 * kappa(i) * xi(i) * xi(i) / (s * s);
    }
    return e - level;
  };
  const auto secular_slope = [&](double m) {
    double d = 0.0;
    for (Eigen::Index i = 0; i < xi.size(); ++i) {
      if (kappa(i) <= kernel_tol) continue;
      const double s = 1.0 + m * kappa(i);
      d -= kappa(i) * kappa(i) * xi(i) * xi(i) / (s * s * s);
    }
    return d;
  };

  // (1 + m kappa)^2 >= m^2 kappa^2 gives secular(hi) <= 0 at this hi.
  double inv_sum = 0.0;
  for (Eigen::Index i = 0; i < xi.size(); ++i) {
    if (kappa(i) > kernel_tol) inv_sum += xi(i) * xi(i) / kappa(i);
  }
  double lo = 0.0;
  double hi = std::sqrt(inv_sum / (2.0 * level));

  constexpr int kMaxIter = 200;
  constexpr double kTol = 1e-12;
  int iter = 0;
  while (hi - lo > kTol * std::max(1.0, hi)) {
    if (++iter > kMaxIter) throw NumericFailure("secular equation: bisection did not converge in 200 iterations");
    const double mid = 0.5 * (lo + hi);
    (secular(mid) > 0.0 ? lo : hi) = mid;
  }
  double m = 0.5 * (lo + hi);
  for (int k = 0; k < 3; ++k) {
    const double slope = secular_slope(m);
    if (slope == 0.0) break;
    const double next = m - secular(m) / slope;
    if (!(next >= lo && next <= hi)) break;
    m = next;
  }

  double d2 = 0.0;
  for (Eigen::Index i = 0; i < xi.size(); ++i) {
    if (kappa(i) <= kernel_tol) continue;
    const double r = m * kappa(i) / (1.0 + m * kappa(i));
    d2 += xi(i) * xi(i) * r * r;
  }
  return std::sqrt(d2);
}

double dist_to_stationary(const FieldState& state, const Grid& grid) {
  require_length(state.u, grid, "dist_to_stationary: u");
  require_length(state.v, grid, "dist_to_stationary: v");
  // min_c trapezoid((u - c)^2) + (u(0) - c)^2 is attained at
  // c = (trapezoid(u) + u(0)) / (L + 1).
  const double c = (trapezoid(state.u, grid) + state.u.front()) / (grid.length() + 1.0);
  std::vector<double> centered(state.u);
  for (double& x : centered) x -= c;
  const double offset_part = trapezoid_product(centered, centered, grid) + centered.front() * centered.front();
  const double d2 = trapezoid_product(state.v, state.v, grid) + state.v.front() * state.v.front() +
                    bilinear_a(state.u, state.u, grid) + offset_part;
  return std::sqrt(d2);
}

}  // namespace waveguard
