#include "waveguard/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "waveguard/errors.hpp"
#include "waveguard/scalar_solve.hpp"

namespace waveguard {

void SolverConfig::validate() const {
  if (!(cfl_lambda > 0.0 && cfl_lambda <= 1.0)) {
    throw ContractViolation("cfl_lambda must lie in (0, 1], got " + std::to_string(cfl_lambda));
  }
  if (!(t_final > 0.0) || !std::isfinite(t_final)) throw ContractViolation("t_final must be positive");
  if (!(boundary_tol > 0.0)) throw ContractViolation("boundary_tol must be positive");
  if (boundary_max_iter < 1) throw ContractViolation("boundary_max_iter must be >= 1");
  if (sample_stride < 1) throw ContractViolation("sample_stride must be >= 1");
}

std::vector<double> Trajectory::step_times() const {
  std::vector<double> t(traces.size());
  std::transform(traces.begin(), traces.end(), t.begin(), [](const TraceRecord& r) { return r.t; });
  return t;
}

std::vector<double> Trajectory::total_energy() const {
  std::vector<double> e(energies.size());
  std::transform(energies.begin(), energies.end(), e.begin(), [](const EnergyBreakdown& b) { return b.total; });
  return e;
}

LeapfrogSolver::LeapfrogSolver(Grid grid, FeedbackLaw g, ForcingLaw F, SolverConfig config)
    : grid_(grid), g_(std::move(g)), F_(std::move(F)), config_(config) {
  config_.validate();
  dt_ = config_.cfl_lambda * grid_.dx();
  n_steps_ = static_cast<int>(std::ceil(config_.t_final / dt_ - 1e-9));
  left_mass_ = 0.5 * grid_.dx() + (config_.left == LeftBoundary::dynamic ? 1.0 : 0.0);
  q_left_ = 0.0;
  if (config_.left == LeftBoundary::dynamic) {
    const auto lip = lipschitz_constant(F_);
    q_left_ = lip.q_global.value_or(lip.q_local);
    if (dt_ * q_left_ / 2.0 > 0.5) {
      throw ContractViolation("time step too large for the left boundary fixed point: dt*q/2 = " +
                              std::to_string(dt_ * q_left_ / 2.0) + " > 0.5");
    }
  }
}

std::vector<double> LeapfrogSolver::seed_previous(const FieldState& initial) const {
  require_conforming(initial, grid_);
  const auto& u = initial.u;
  const auto& v = initial.v;
  const std::size_t last = grid_.n_nodes() - 1;
  const double dx = grid_.dx();

  std::vector<double> acc(grid_.n_nodes());
  for (std::size_t j = 1; j < last; ++j) acc[j] = (u[j + 1] - 2.0 * u[j] + u[j - 1]) / (dx * dx);
  const double slope0 = (u[1] - u[0]) / dx;
  if (config_.left == LeftBoundary::dynamic) {
    acc[0] = (slope0 + F_(v[0])) / left_mass_;
  } else {
    acc[0] = 2.0 * slope0 / dx;
  }
  acc[last] = 2.0 * (-(u[last] - u[last - 1]) / dx - g_(v[last])) / dx;

  std::vector<double> prev(grid_.n_nodes());
  for (std::size_t j = 0; j <= last; ++j) prev[j] = u[j] - dt_ * v[j] + 0.5 * dt_ * dt_ * acc[j];
  return prev;
}

double LeapfrogSolver::solve_left(std::span<const double> prev, std::span<const double> curr, double t,
                                  StepInfo& info) const {
  const double dx = grid_.dx();
  const double backward = (curr[0] - prev[0]) / dt_;
  const double slope0 = (curr[1] - curr[0]) / dx;
  const double inertia = 2.0 * left_mass_ / dt_;

  // Residual of  m0 (u^{n+1} - 2u^n + u^{n-1}) / dt^2 = u_x(0) + F(v)  in terms of v.
  const auto residual = [&](double s) { return inertia * (s - backward) - slope0 - F_(s); };

  // Fixed point s = backward + (slope0 + F(s)) / inertia; contraction factor
  // q / inertia <= dt q / 2. After an update the residual is F(s_k) - F(s_{k+1}).
  double s = backward;
  double f_s = F_(s);
  for (int it = 1; it <= config_.boundary_max_iter; ++it) {
    const double next = backward + (slope0 + f_s) / inertia;
    const double f_next = F_(next);
    const bool settled = std::abs(f_next - f_s) <= config_.boundary_tol || next == s;
    s = next;
    f_s = f_next;
    if (settled) {
      info.left_iterations = it;
      info.left_residual = residual(s);
      return s;
    }
  }

  // Stagnation: the residual is strictly increasing with slope >= inertia - q.
  const auto root = solve_increasing(residual, {}, s, inertia - q_left_, config_.boundary_tol,
                                     config_.boundary_max_iter);
  if (!root.converged) {
    throw StepFailure(StepFailure::Kind::boundary_solve, t,
                      "left boundary solve did not converge at t = " + std::to_string(t));
  }
  info.left_iterations = config_.boundary_max_iter + root.iterations;
  info.left_residual = root.residual;
  return root.x;
}

double LeapfrogSolver::solve_right(std::span<const double> prev, std::span<const double> curr, double t,
                                   StepInfo& info) const {
  const std::size_t last = grid_.n_nodes() - 1;
  const double backward = (curr[last] - prev[last]) / dt_;
  const double slope_l = (curr[last] - curr[last - 1]) / grid_.dx();
  const double inv_lambda = 1.0 / config_.cfl_lambda;

  // u_x(L) + g(v) with u_x(L) from the ghost closure.
  const auto residual = [&](double s) { return inv_lambda * (s - backward) + slope_l + g_(s); };
  const auto derivative = [&](double s) { return inv_lambda + g_.slope(s); };

  const auto root =
      solve_increasing(residual, derivative, backward, inv_lambda, config_.boundary_tol, config_.boundary_max_iter);
  if (!root.converged) {
    throw StepFailure(StepFailure::Kind::boundary_solve, t,
                      "right boundary solve exceeded " + std::to_string(config_.boundary_max_iter) +
                          " iterations at t = " + std::to_string(t) + " (residual " +
                          std::to_string(root.residual) + ")");
  }
  info.right_iterations = root.iterations;
  info.right_residual = root.residual;
  return root.x;
}

StepInfo LeapfrogSolver::step(std::span<const double> prev, std::span<const double> curr, std::span<double> next,
                              double t) const {
  const std::size_t n = grid_.n_nodes();
  if (prev.size() != n || curr.size() != n || next.size() != n) {
    throw ContractViolation("step: level vectors must have N+1 entries");
  }
  const std::size_t last = n - 1;
  const double lam2 = config_.cfl_lambda * config_.cfl_lambda;

  for (std::size_t j = 1; j < last; ++j) {
    next[j] = 2.0 * curr[j] - prev[j] + lam2 * (curr[j + 1] - 2.0 * curr[j] + curr[j - 1]);
  }

  StepInfo info;
  if (config_.left == LeftBoundary::dynamic) {
    info.v0 = solve_left(prev, curr, t, info);
    next[0] = prev[0] + 2.0 * dt_ * info.v0;
  } else {
    next[0] = 2.0 * curr[0] - prev[0] + 2.0 * lam2 * (curr[1] - curr[0]);
    info.v0 = (next[0] - prev[0]) / (2.0 * dt_);
  }
  info.vL = solve_right(prev, curr, t, info);
  next[last] = prev[last] + 2.0 * dt_ * info.vL;

  double peak = 0.0;
  for (double x : next) {
    if (!std::isfinite(x)) {
      throw StepFailure(StepFailure::Kind::blow_up, t + dt_, "non-finite displacement at t = " + std::to_string(t + dt_));
    }
    peak = std::max(peak, std::abs(x));
  }
  if (peak > kBlowUpThreshold) {
    throw StepFailure(StepFailure::Kind::blow_up, t + dt_,
                      "displacement exceeded blow-up threshold at t = " + std::to_string(t + dt_));
  }
  return info;
}

double LeapfrogSolver::staggered_energy(std::span<const double> lower, std::span<const double> upper) const {
  double kinetic = 0.0;
  for (std::size_t j = 0; j < lower.size(); ++j) {
    const double w = grid_.trapezoid_weight(j) + (j == 0 ? left_mass_ - 0.5 * grid_.dx() : 0.0);
    const double rate = (upper[j] - lower[j]) / dt_;
    kinetic += w * rate * rate;
  }
  return 0.5 * kinetic + 0.5 * bilinear_a(upper, lower, grid_);
}

Trajectory LeapfrogSolver::simulate(const FieldState& initial) const {
  require_conforming(initial, grid_);
  const std::size_t n = grid_.n_nodes();
  const std::size_t last = n - 1;
  const double dx = grid_.dx();

  Trajectory traj{grid_, dt_, {}, {}, {}, {}, {}};
  const auto steps = static_cast<std::size_t>(n_steps_) + 1;
  traj.traces.reserve(steps);
  traj.energies.reserve(steps);
  traj.scheme_energy.reserve(steps);

  std::vector<double> prev = seed_previous(initial);
  std::vector<double> curr = initial.u;
  std::vector<double> next(n);
  FieldState level{std::vector<double>(n), std::vector<double>(n)};

  for (int k = 0; k <= n_steps_; ++k) {
    const double t = k * dt_;
    const StepInfo info = step(prev, curr, next, t);

    level.u = curr;
    for (std::size_t j = 0; j < n; ++j) level.v[j] = (next[j] - prev[j]) / (2.0 * dt_);
    level.v[0] = info.v0;
    level.v[last] = info.vL;

    TraceRecord rec;
    rec.t = t;
    rec.u0 = curr[0];
    rec.v0 = info.v0;
    const double acc0 = (next[0] - 2.0 * curr[0] + prev[0]) / (dt_ * dt_);
    rec.dxu0 = (curr[1] - curr[0]) / dx - 0.5 * dx * acc0;
    rec.F_of_v0 = config_.left == LeftBoundary::dynamic ? F_(info.v0) : 0.0;
    rec.vL = info.vL;
    const double accL = (next[last] - 2.0 * curr[last] + prev[last]) / (dt_ * dt_);
    rec.dxuL = (curr[last] - curr[last - 1]) / dx + 0.5 * dx * accL;
    rec.g_of_vL = g_(info.vL);

    traj.traces.push_back(rec);
    EnergyBreakdown e = energy(level, grid_);
    if (config_.left == LeftBoundary::neumann) {
      e.total -= e.boundary_kinetic;
      e.boundary_kinetic = 0.0;
    }
    traj.energies.push_back(e);
    traj.scheme_energy.push_back(0.5 * (staggered_energy(prev, curr) + staggered_energy(curr, next)));
    if (k % config_.sample_stride == 0 || k == n_steps_) {
      traj.times.push_back(t);
      traj.states.push_back(level);
    }

    std::swap(prev, curr);
    std::swap(curr, next);
  }
  return traj;
}

std::vector<double> step(std::span<const double> prev, std::span<const double> curr, const FeedbackLaw& g,
                         const ForcingLaw& F, const Grid& grid, const SolverConfig& config) {
  const LeapfrogSolver solver(grid, g, F, config);
  std::vector<double> next(grid.n_nodes());
  solver.step(prev, curr, next, 0.0);
  return next;
}

Trajectory simulate(const FieldState& initial, const FeedbackLaw& g, const ForcingLaw& F, const Grid& grid,
                    const SolverConfig& config) {
  return LeapfrogSolver(grid, g, F, config).simulate(initial);
}

}  // namespace waveguard
