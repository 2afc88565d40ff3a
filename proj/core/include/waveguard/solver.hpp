#pragma once

// Time integration of
//   u_tt - u_xx = 0                 on (0, L),
//   u_tt(0) - u_x(0) = F(u_t(0))    (dynamic boundary, unit tip mass),
//   u_x(L) = -g(u_t(L))             (velocity feedback),
// by the three-level leapfrog scheme with ghost-point closures.
//
// Eliminating the ghost values gives the lumped form
//   M (u^{n+1} - 2u^n + u^{n-1}) / dt^2 = -K u^n + b(v^n),
// with M = diag(1 + dx/2, dx, ..., dx, dx/2), K the stiffness matrix of the
// a-form and b = (F(v_0), 0, ..., 0, -g(v_N)) evaluated at the centred
// velocities v^n = (u^{n+1} - u^{n-1}) / (2 dt). Both boundary updates are
// therefore implicit scalar equations; the one at x = L is strictly
// increasing because g is nondecreasing.
//
// The staggered quantity
//   E^{n+1/2} = 1/2 |(u^{n+1} - u^n)/dt|_M^2 + 1/2 a(u^{n+1}, u^n)
// satisfies E^{n+1/2} - E^{n-1/2} = dt (F(v_0^n) v_0^n - g(v_N^n) v_N^n)
// exactly (up to the boundary solve tolerance), and is nonnegative for
// lambda <= 1. Trajectory::scheme_energy records its two-point average.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "waveguard/grid.hpp"
#include "waveguard/nonlinearities.hpp"
#include "waveguard/state_space.hpp"

namespace waveguard {

enum class LeftBoundary {
  dynamic,  ///< tip-mass condition with forcing F
  neumann,  ///< homogeneous Neumann without tip mass, F ignored; recorded energies drop the theta term
};

struct SolverConfig {
  double cfl_lambda = 0.9;  ///< dt / dx, in (0, 1]
  double t_final = 1.0;
  double boundary_tol = 1e-12;
  int boundary_max_iter = 100;
  int sample_stride = 1;  ///< keep every k-th state (the final one is always kept)
  LeftBoundary left = LeftBoundary::dynamic;

  /// Throws ContractViolation on out-of-range fields.
  void validate() const;
};

/// Boundary traces at one time level.
struct TraceRecord {
  double t = 0.0;
  double u0 = 0.0;
  double v0 = 0.0;
  double dxu0 = 0.0;  ///< u_x(0) from the ghost-point closure
  double vL = 0.0;
  double dxuL = 0.0;  ///< u_x(L) from the ghost-point closure
  double g_of_vL = 0.0;
  double F_of_v0 = 0.0;
};

struct Trajectory {
  Grid grid;
  double dt = 0.0;
  /// Sample times of `states` (every sample_stride steps plus the last).
  std::vector<double> times;
  std::vector<FieldState> states;
  /// One entry per step, aligned with each other.
  std::vector<TraceRecord> traces;
  std::vector<EnergyBreakdown> energies;
  std::vector<double> scheme_energy;

  /// Times of the per-step series.
  std::vector<double> step_times() const;
  std::vector<double> total_energy() const;
};

/// A step could not be completed. Blow-up is an expected outcome when the
/// anti-damping hypotheses fail.
class StepFailure : public std::runtime_error {
 public:
  enum class Kind { boundary_solve, blow_up };

  StepFailure(Kind kind, double time, const std::string& message)
      : std::runtime_error(message), kind_(kind), time_(time) {}

  Kind kind() const noexcept { return kind_; }
  double time() const noexcept { return time_; }

 private:
  Kind kind_;
  double time_;
};

inline constexpr double kBlowUpThreshold = 1e12;

struct StepInfo {
  double v0 = 0.0;  ///< centred boundary velocity at x = 0 solved for
  double vL = 0.0;
  double left_residual = 0.0;   ///< residual of the dynamic boundary equation
  double right_residual = 0.0;  ///< u_x(L) + g(v_L)
  int left_iterations = 0;
  int right_iterations = 0;
};

class LeapfrogSolver {
 public:
  /// Throws ContractViolation if the configuration is invalid or the
  /// left-boundary fixed point would not contract (dt q / 2 > 1/2).
  LeapfrogSolver(Grid grid, FeedbackLaw g, ForcingLaw F, SolverConfig config);

  const Grid& grid() const noexcept { return grid_; }
  const SolverConfig& config() const noexcept { return config_; }
  double dt() const noexcept { return dt_; }
  int n_steps() const noexcept { return n_steps_; }

  /// u^{-1} = u^0 - dt v^0 + dt^2/2 a^0, with a^0 the scheme's acceleration
  /// (boundary closures included).
  std::vector<double> seed_previous(const FieldState& initial) const;

  /// Writes u^{n+1} into `next`. Throws StepFailure (with time t) if a
  /// boundary solve fails or the update is non-finite / exceeds the blow-up
  /// threshold.
  StepInfo step(std::span<const double> prev, std::span<const double> curr, std::span<double> next, double t) const;

  Trajectory simulate(const FieldState& initial) const;

  /// Staggered energy between two consecutive levels (see file comment).
  double staggered_energy(std::span<const double> lower, std::span<const double> upper) const;

 private:
  double solve_left(std::span<const double> prev, std::span<const double> curr, double t, StepInfo& info) const;
  double solve_right(std::span<const double> prev, std::span<const double> curr, double t, StepInfo& info) const;

  Grid grid_;
  FeedbackLaw g_;
  ForcingLaw F_;
  SolverConfig config_;
  double dt_;
  int n_steps_;
  double q_left_;
  double left_mass_;
};

/// One leapfrog step from (u^{n-1}, u^n); convenience wrapper.
std::vector<double> step(std::span<const double> prev, std::span<const double> curr, const FeedbackLaw& g,
                         const ForcingLaw& F, const Grid& grid, const SolverConfig& config);

Trajectory simulate(const FieldState& initial, const FeedbackLaw& g, const ForcingLaw& F, const Grid& grid,
                    const SolverConfig& config);

}  // namespace waveguard
