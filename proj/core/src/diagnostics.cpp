#include "waveguard/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "waveguard/errors.hpp"

namespace waveguard {

namespace {

// int 2 rho u_x v dx with rho and v at cell midpoints.
double cross_term(const FieldState& s, const WeightRho& rho, const Grid& grid) {
  const double dx = grid.dx();
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < s.u.size(); ++j) {
    const double mid = (static_cast<double>(j) + 0.5) * dx;
    sum += rho.at(mid) * (s.u[j + 1] - s.u[j]) * 0.5 * (s.v[j] + s.v[j + 1]);
  }
  return 2.0 * sum;
}

}  // namespace

std::vector<double> energy_identity_residual(const Trajectory& traj, const FeedbackLaw& g, const ForcingLaw& F) {
  std::vector<double> out(traj.traces.size(), 0.0);
  if (out.empty()) return out;
  const double e0 = traj.energies.front().total;
  double work = 0.0;
  double prev_power = 0.0;
  for (std::size_t n = 0; n < out.size(); ++n) {
    const auto& tr = traj.traces[n];
    const double power = F(tr.v0) * tr.v0 - g(tr.vL) * tr.vL;
    if (n > 0) work += 0.5 * (tr.t - traj.traces[n - 1].t) * (prev_power + power);
    prev_power = power;
    out[n] = traj.energies[n].total - e0 - work;
  }
  return out;
}

double multiplier_identity_residual(const Trajectory& traj, const WeightRho& rho) {
  if (traj.states.size() < 2) return 0.0;
  const Grid& grid = traj.grid;
  const double t_first = traj.times.front();
  const double t_last = traj.times.back();

  const double boundary_change = cross_term(traj.states.back(), rho, grid) - cross_term(traj.states.front(), rho, grid);

  // rho' int (|v|^2 + |u_x|^2) dx, trapezoid over the stored times.
  double interior = 0.0;
  double prev_density = 0.0;
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const auto& s = traj.states[k];
    const double density = rho.slope() * (trapezoid_product(s.v, s.v, grid) + bilinear_a(s.u, s.u, grid));
    if (k > 0) interior += 0.5 * (traj.times[k] - traj.times[k - 1]) * (prev_density + density);
    prev_density = density;
  }

  // int [rho (|v|^2 + |u_x|^2)]_0^L dt over the traces in [t_first, t_last].
  double flux = 0.0;
  double prev_flux = 0.0;
  bool started = false;
  double prev_t = 0.0;
  const double eps = 1e-9 * traj.dt;
  for (const auto& tr : traj.traces) {
    if (tr.t < t_first - eps || tr.t > t_last + eps) continue;
    const double value = rho.rhoL() * (tr.vL * tr.vL + tr.dxuL * tr.dxuL) -
                         rho.rho0() * (tr.v0 * tr.v0 + tr.dxu0 * tr.dxu0);
    if (started) flux += 0.5 * (tr.t - prev_t) * (prev_flux + value);
    started = true;
    prev_flux = value;
    prev_t = tr.t;
  }
  return boundary_change + interior - flux;
}

double lyapunov_gamma(const FieldState& state, const WeightRho& rho, const Grid& grid) {
  require_conforming(state, grid);
  return energy(state, grid).total + 0.5 * cross_term(state, rho, grid);
}

DecayFit fit_decay_rate(std::span<const double> times, std::span<const double> energies, double E_S,
                        const FitOptions& options) {
  if (times.size() != energies.size()) throw ContractViolation("fit_decay_rate: series lengths differ");
  if (energies.empty()) throw FitUnavailable("empty energy series");
  const double base = std::max(energies.front() - E_S, 0.0);
  const double floor = options.floor * std::abs(energies.front());

  std::vector<double> ts;
  std::vector<double> ys;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] < options.t_start) continue;
    const double excess = energies[k] - E_S;
    if (!(excess >= floor) || excess <= 0.0) break;
    ts.push_back(times[k]);
    ys.push_back(std::log(excess));
  }
  if (ts.size() < 2) {
    throw FitUnavailable("fewer than two samples above the floor after t = " + std::to_string(options.t_start));
  }

  const double n = static_cast<double>(ts.size());
  double mt = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    mt += ts[k];
    my += ys[k];
  }
  mt /= n;
  my /= n;
  double stt = 0.0;
  double sty = 0.0;
  double syy = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    stt += (ts[k] - mt) * (ts[k] - mt);
    sty += (ts[k] - mt) * (ys[k] - my);
    syy += (ys[k] - my) * (ys[k] - my);
  }
  if (stt == 0.0) throw FitUnavailable("fit window has zero time extent");
  const double slope = sty / stt;
  const double intercept = my - slope * mt;
  double ss_res = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const double r = ys[k] - (intercept + slope * ts[k]);
    ss_res += r * r;
  }

  DecayFit fit;
  fit.mu_obs = -slope;
  fit.M_obs = base > 0.0 ? std::exp(intercept) / base : 0.0;
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  fit.t_start = ts.front();
  fit.t_end = ts.back();
  fit.n_points = ts.size();
  return fit;
}

DecayEnvelope envelope(const MonotoneCertificate& cert) { return {cert.M, cert.mu, cert.E_S}; }

DecayEnvelope envelope(const AntiDampingCertificate& cert) { return {cert.M_prefactor, cert.mu, 0.0}; }

BoundReport check_decay_bound(std::span<const double> times, std::span<const double> energies,
                              const DecayEnvelope& env, double slack) {
  if (times.size() != energies.size()) throw ContractViolation("check_decay_bound: series lengths differ");
  BoundReport rep;
  if (energies.empty()) return rep;
  const double base = std::max(energies.front() - env.E_S, 0.0);
  bool first = true;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double rhs = env.M * std::exp(-env.mu * times[k]) * base;
    const double lhs = std::max(energies[k] - env.E_S, 0.0);
    const double margin = slack * rhs - lhs;
    if (first || margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_time = times[k];
      first = false;
    }
    if (rhs > 0.0) rep.worst_ratio = std::max(rep.worst_ratio, lhs / rhs);
  }
  rep.holds = rep.worst_margin >= -kBoundAbsFloor;
  return rep;
}

BoundReport check_decay_bound(std::span<const double> times, std::span<const double> energies,
                              const MonotoneCertificate& cert, double slack) {
  return check_decay_bound(times, energies, envelope(cert), slack);
}

BoundReport check_decay_bound(std::span<const double> times, std::span<const double> energies,
                              const AntiDampingCertificate& cert, double slack) {
  return check_decay_bound(times, energies, envelope(cert), slack);
}

StationaryLimit stationary_limit(const Trajectory& traj, double threshold) {
  if (traj.states.empty()) throw ContractViolation("stationary_limit: trajectory has no stored states");
  const FieldState& last = traj.states.back();
  StationaryLimit out;
  out.u_infinity = mean_functional(last, traj.grid);
  for (double x : last.u) out.final_sup_deviation = std::max(out.final_sup_deviation, std::abs(x - out.u_infinity));
  out.final_distance = dist_to_stationary(last, traj.grid);
  out.converged = out.final_distance <= threshold && out.final_sup_deviation <= threshold;
  return out;
}

BasinEstimate probe_stability_basin(const BasinProbe& probe, double lo, double hi, int n_bisect) {
  if (!(lo >= 0.0) || !(hi > lo) || n_bisect < 0) {
    throw ContractViolation("basin probe needs 0 <= lo < hi and n_bisect >= 0");
  }
  SectorData sector;
  try {
    sector = sector_params(probe.g);
  } catch (const NoValidSector& e) {
    throw HypothesisViolated("global sector required", e.what());
  }
  const auto cert = build_antidamping_certificate(lipschitz_constant(probe.F).q_local, sector,
                                                  probe.grid.length());
  const LeapfrogSolver solver(probe.grid, probe.g, probe.F, probe.config);

  const auto decays = [&](double amplitude) {
    try {
      const Trajectory traj = solver.simulate(probe.initial(amplitude));
      const auto e = traj.total_energy();
      return check_decay_bound(traj.step_times(), e, cert, probe.slack).holds;
    } catch (const StepFailure&) {
      return false;
    }
  };

  if (decays(hi)) return {hi, true};
  if (!decays(lo)) return {0.0, true};
  for (int k = 0; k < n_bisect; ++k) {
    const double mid = 0.5 * (lo + hi);
    (decays(mid) ? lo : hi) = mid;
  }
  return {lo, false};
}

}  // namespace waveguard
