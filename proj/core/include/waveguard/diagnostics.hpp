#pragma once

// Checks of the energy and multiplier identities and of the decay bounds on
// computed trajectories.

#include <functional>
#include <span>
#include <vector>

#include "waveguard/certificates.hpp"
#include "waveguard/nonlinearities.hpp"
#include "waveguard/solver.hpp"
#include "waveguard/state_space.hpp"
#include "waveguard/weight.hpp"

namespace waveguard {

/// Per step n: [E(t_n) - E(0)] - int_0^{t_n} F(v0) v0 + int_0^{t_n} g(vL) vL,
/// trapezoid rule in time over the trace series.
std::vector<double> energy_identity_residual(const Trajectory& traj, const FeedbackLaw& g, const ForcingLaw& F);

/// Sum of the three terms of the multiplier identity for the weight rho,
/// taken between the first and last stored states. Interior integrals use the
/// stored snapshots (trapezoid in t); boundary integrals use the traces.
double multiplier_identity_residual(const Trajectory& traj, const WeightRho& rho);

/// E + int rho u_x v, with rho and v taken at cell midpoints.
double lyapunov_gamma(const FieldState& state, const WeightRho& rho, const Grid& grid);

struct DecayFit {
  double mu_obs = 0.0;
  double M_obs = 0.0;
  double r_squared = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;
  std::size_t n_points = 0;
};

struct FitOptions {
  double floor = 1e-10;  ///< relative to E(0)
  double t_start = 0.0;  ///< transient skipped before fitting
};

/// Least-squares fit of log {E - E_S}^+ over the first contiguous window with
/// t >= t_start and {E - E_S}^+ >= floor * E(0). Throws FitUnavailable when
/// fewer than two points qualify.
DecayFit fit_decay_rate(std::span<const double> times, std::span<const double> energies, double E_S,
                        const FitOptions& options = {});

/// {E(t) - E_S}^+ <= M exp(-mu t) {E(0) - E_S}^+.
struct DecayEnvelope {
  double M = 1.0;
  double mu = 0.0;
  double E_S = 0.0;
};

DecayEnvelope envelope(const MonotoneCertificate& cert);
DecayEnvelope envelope(const AntiDampingCertificate& cert);

struct BoundReport {
  bool holds = true;
  double worst_margin = 0.0;  ///< min over t of slack * RHS - LHS
  double worst_time = 0.0;
  double worst_ratio = 0.0;   ///< max over t of LHS / RHS (0 when RHS vanishes)
};

inline constexpr double kDefaultSlack = 1.05;
inline constexpr double kBoundAbsFloor = 1e-12;

/// Pointwise check of the envelope with multiplicative slack; holds when the
/// worst margin is >= -kBoundAbsFloor. E(0) is energies[0].
BoundReport check_decay_bound(std::span<const double> times, std::span<const double> energies,
                              const DecayEnvelope& env, double slack = kDefaultSlack);
BoundReport check_decay_bound(std::span<const double> times, std::span<const double> energies,
                              const MonotoneCertificate& cert, double slack = kDefaultSlack);
BoundReport check_decay_bound(std::span<const double> times, std::span<const double> energies,
                              const AntiDampingCertificate& cert, double slack = kDefaultSlack);

struct StationaryLimit {
  double u_infinity = 0.0;
  bool converged = false;
  double final_distance = 0.0;  ///< dist_to_stationary of the last state
  double final_sup_deviation = 0.0;  ///< max |u - u_infinity|
};

/// u_infinity is the mean of the last stored displacement.
StationaryLimit stationary_limit(const Trajectory& traj, double threshold = 1e-6);

/// Empirical basin probe: a run "decays" when it completes and satisfies the
/// anti-damping envelope built from the local Lipschitz constant of F.
struct BasinProbe {
  Grid grid;
  FeedbackLaw g;
  ForcingLaw F;
  SolverConfig config;
  std::function<FieldState(double amplitude)> initial;
  double slack = kDefaultSlack;
};

struct BasinEstimate {
  double amplitude = 0.0;
  /// The estimate sits at an end of the range (everything or nothing decayed).
  bool open = false;
};

/// Bisects over [lo, hi]. Throws HypothesisViolated when the local
/// Lipschitz constant of F is >= 1/2 or g has no global sector.
BasinEstimate probe_stability_basin(const BasinProbe& probe, double lo, double hi, int n_bisect);

}  // namespace waveguard
