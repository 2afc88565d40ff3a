// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "oracles.hpp"
#include "runner/commands.hpp"
#include "runner/config.hpp"
#include "waveguard/certificates.hpp"
#include "waveguard/diagnostics.hpp"
#include "waveguard/errors.hpp"
#include "waveguard/initial_data.hpp"
#include "waveguard/oracle.hpp"
#include "waveguard/solver.hpp"

using namespace waveguard;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [FAILED]");
  }
};

std::string sci(double x) { return fmt::format("{:.3e}", x); }

double max_abs(const std::vector<double>& r) {
  double m = 0;
  for (double x : r) m = std::max(m, std::abs(x));
  return m;
}

Trajectory run(const FieldState& init, const FeedbackLaw& g, const ForcingLaw& F, int n, double t_final,
               int stride = 1) {
  SolverConfig cfg;
  cfg.t_final = t_final;
  cfg.sample_stride = stride;
  return simulate(init, g, F, Grid(1.0, n), cfg);
}

Trajectory transparent(int n, double t_final) {
  Grid grid(1.0, n);
  return run(make_initial(InitialKind::right_moving_pulse, InitialParams{}, grid).state, FeedbackLaw::identity(),
             ForcingLaw::zero(), n, t_final);
}

Trajectory damped_bump(int n) {
  Grid grid(1.0, n);
  InitialParams p;
  p.width = 0.1;
  return run(make_initial(InitialKind::gaussian_bump, p, grid).state, FeedbackLaw::identity(),
             ForcingLaw::monotone_damping(1.0), n, 3.0);
}

double min_order(const std::vector<double>& errors) {
  double m = INFINITY;
  for (std::size_t k = 1; k < errors.size(); ++k) m = std::min(m, std::log2(errors[k - 1] / errors[k]));
  return m;
}

// 1: discrete solution vs exact translation of the pulse
Outcome characteristics_oracle_equivalence() {
  Outcome out;
  const InitialParams p;
  const auto w = pulse_profile(p);
  std::vector<double> errors;
  double E_ratio = 0;
  for (int n : {200, 400, 800}) {
    auto traj = transparent(n, n == 400 ? 3.0 : 1.4);
    double err = 0;
    for (std::size_t k = 0; k < traj.states.size() && traj.times[k] <= 1.4 + 1e-12; ++k) {
      err = std::max(err, oracle::max_abs_diff(characteristics_oracle(w, traj.grid, traj.times[k]).u,
                                               traj.states[k].u));
    }
    errors.push_back(err / std::abs(p.amplitude));
    if (n == 400) E_ratio = traj.energies.back().total / traj.energies.front().total;
  }
  out.require(errors[1] <= 5e-3, "max_err/A(N=400)=" + sci(errors[1]) + " <= 5e-3");
  out.require(E_ratio <= 1e-3, "E(3)/E(0)=" + sci(E_ratio) + " <= 1e-3");
  out.require(min_order(errors) >= 1.5, fmt::format("order={:.2f} >= 1.5", min_order(errors)));
  return out;
}

// 2: energy identity on the transparent and damped scenarios
Outcome energy_identity() {
  Outcome out;
  for (int which = 0; which < 2; ++which) {
    std::vector<double> rel;
    for (int n : {200, 400, 800}) {
      auto traj = which == 0 ? transparent(n, 3.0) : damped_bump(n);
      const auto F = which == 0 ? ForcingLaw::zero() : ForcingLaw::monotone_damping(1.0);
      rel.push_back(max_abs(energy_identity_residual(traj, FeedbackLaw::identity(), F)) /
                    traj.energies.front().total);
    }
    const std::string tag = which == 0 ? "oracle" : "damped";
    out.require(rel[1] <= 1e-3, tag + " resid/E0(N=400)=" + sci(rel[1]) + " <= 1e-3");
    out.require(min_order(rel) >= 1.5, tag + fmt::format(" order={:.2f} >= 1.5", min_order(rel)));
  }
  return out;
}

// 3: S = 0 monotone bound
Outcome monotone_bound() {
  Outcome out;
  auto cert = build_monotone_certificate(sector_params(FeedbackLaw::linear_gain(1.0)), WeightRho(1, 2, 1));
  const bool constants = std::abs(cert.tau - 9) < 1e-12 && std::abs(cert.mu - std::log(9.0 / 8.0) / 9) < 1e-15 &&
                         std::abs(cert.M - 9.0 / 8.0) < 1e-15 && cert.E_S == 0.0;
  out.require(constants, fmt::format("tau={:.6g} mu={:.6g} M={:.6g} E_S={:.3g}", cert.tau, cert.mu, cert.M, cert.E_S));

  Grid grid(1.0, 400);
  auto init = make_initial(InitialKind::sine_mode, InitialParams{}, grid).state;
  auto traj = run(init, FeedbackLaw::linear_gain(1.0), ForcingLaw::monotone_damping(1.0), 400, 50.0, 100);
  const auto e = traj.total_energy();
  auto rep = check_decay_bound(traj.step_times(), e, cert, 1.05);
  out.require(rep.holds, "bound holds, worst ratio " + sci(rep.worst_ratio));
  auto fit = fit_decay_rate(traj.step_times(), e, 0.0);
  out.require(fit.mu_obs >= cert.mu, fmt::format("mu_obs={:.4f} >= mu_cert={:.4f}", fit.mu_obs, cert.mu));
  return out;
}

// 4: deadzone bound above E_S, conservation inside the deadzone
Outcome deadzone_bound() {
  Outcome out;
  auto cert = build_monotone_certificate(sector_params(FeedbackLaw::deadzone(0.5)), WeightRho(1, 2, 1));
  out.require(std::abs(cert.E_S - 180) < 1e-9, fmt::format("E_S={:.6g}", cert.E_S));

  Grid grid(1.0, 400);
  auto cfg = runner::parse_config(
      nlohmann::json::parse(std::ifstream(fs::path(WAVEGUARD_SCENARIO_DIR) / "deadzone.json")));
  auto init = make_initial(cfg.init_kind, cfg.init, grid).state;
  auto traj = run(init, FeedbackLaw::deadzone(0.5), ForcingLaw::monotone_damping(1.0), 400, 100.0, 100);
  const auto e = traj.total_energy();
  out.require(e.front() >= 2 * cert.E_S, fmt::format("E(0)={:.1f} >= 2 E_S", e.front()));
  auto rep = check_decay_bound(traj.step_times(), e, cert, 1.05);
  out.require(rep.holds, "bound holds over [0, 100], worst ratio " + sci(rep.worst_ratio));

  InitialParams small;
  small.amplitude = 0.05;
  auto quiet = run(make_initial(InitialKind::sine_mode, small, grid).state, FeedbackLaw::deadzone(0.5),
                   ForcingLaw::zero(), 400, 10.0, 100);
  double vmax = 0;
  for (const auto& tr : quiet.traces) vmax = std::max(vmax, std::abs(tr.vL));
  double drift = 0;
  const double S0 = quiet.scheme_energy.front();
  for (double s : quiet.scheme_energy) drift = std::max(drift, std::abs(s - S0) / S0);
  out.require(vmax < 0.5, fmt::format("max|v(L)|={:.3f} < 0.5", vmax));
  out.require(drift <= 1e-6, "energy drift " + sci(drift) + " <= 1e-6");
  return out;
}

struct AntiDampingRun {
  AntiDampingCertificate cert;
  Trajectory traj;
  double amplitude;
};

AntiDampingRun antidamping_run() {
  Grid grid(1.0, 200);
  InitialParams p;
  p.width = 0.1;
  auto init = make_initial(InitialKind::gaussian_bump, p, grid).state;
  return {build_antidamping_certificate(0.4, sector_params(FeedbackLaw::identity()), 1.0),
          run(init, FeedbackLaw::identity(), ForcingLaw::tanh_antidamping(0.4), 200, 200.0, 10), p.amplitude};
}

// 5: global anti-damping bound and Lyapunov sandwich
Outcome antidamping_bound() {
  Outcome out;
  auto r = antidamping_run();
  out.require(std::abs(r.cert.epsilon - 1.0 / 15) < 1e-15 && std::abs(r.cert.mu - 1.0 / 30) < 1e-15,
              fmt::format("eps={:.6g} mu={:.6g}", r.cert.epsilon, r.cert.mu));
  const auto e = r.traj.total_energy();
  auto rep = check_decay_bound(r.traj.step_times(), e, r.cert, 1.05);
  out.require(rep.holds, "bound holds over [0, 200], worst ratio " + sci(rep.worst_ratio));
  double worst = INFINITY;
  for (const auto& s : r.traj.states) {
    const double E = energy(s, r.traj.grid).total;
    const double G = lyapunov_gamma(s, r.cert.rho, r.traj.grid);
    worst = std::min({worst, G - r.cert.M1 * E, r.cert.M2 * E - G});
  }
  out.require(worst >= -1e-14, "sandwich margin " + sci(worst));

  const auto sector = sector_params(FeedbackLaw::identity());
  bool feasible = true;
  try {
    build_antidamping_certificate(0.499, sector, 1.0);
  } catch (const HypothesisViolated&) {
    feasible = false;
  }
  bool rejected = false;
  try {
    build_antidamping_certificate(0.5, sector, 1.0);
  } catch (const HypothesisViolated& ex) {
    rejected = ex.condition() == "q ∈ (0, 1/2)";
  }
  out.require(feasible && rejected, "q=0.499 feasible, q=0.5 hypothesis_violated");
  return out;
}

// 6: attractivity of the stationary set
Outcome pointwise_convergence() {
  Outcome out;
  auto r = antidamping_run();
  const auto lemma = distance_lemma_constant(r.traj.grid);
  const double Mp = attractivity_constant(r.cert, lemma);
  const double E0 = r.traj.energies.front().total;
  double worst = 0;
  for (std::size_t k = 0; k < r.traj.states.size(); ++k) {
    const double d = dist_to_stationary(r.traj.states[k], r.traj.grid);
    worst = std::max(worst, d * d / (Mp * std::exp(-r.cert.mu * r.traj.times[k]) * E0));
  }
  out.require(worst <= 1.05, "dist^2 / (M' e^{-mu t} E0) max " + sci(worst) + " <= 1.05");
  auto lim = stationary_limit(r.traj);
  out.require(lim.final_sup_deviation <= 1e-4 * r.amplitude,
              "final |u - u_inf|_inf=" + sci(lim.final_sup_deviation) + " <= 1e-4 A");
  return out;
}

// 7: distance lemma on random states, exact distance vs projected descent
Outcome distance_lemma() {
  Outcome out;
  const int n = 32;
  Grid grid(1.0, n);
  const double K = distance_lemma_constant(grid).K;
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> level(0.0, 3.0);
  double worst = 0;
  std::vector<FieldState> states;
  for (int i = 0; i < 100; ++i) {
    states.push_back(oracle::random_state(n, 1.0, level(rng), rng));
    const double E = energy(states.back(), grid).total;
    for (double lv : {0.0, 0.5, 1.0}) {
      const double d = dist_to_sublevel_exact(states.back(), SublevelSetSpec(lv), grid);
      const double rhs = K * std::max(E - lv, 0.0);
      worst = std::max(worst, rhs > 0 ? d * d / rhs : (d > 0 ? INFINITY : 0.0));
    }
  }
  out.require(worst <= 1 + 1e-10, "max dist^2 / (K {E - level}^+)=" + fmt::format("{:.6f}", worst));

  // Outside the set the comparison is relative to the distance; inside it
  // the exact distance must vanish and descent must land within 1e-6 ||X||_H.
  double rel = 0;
  double inside = 0;
  int n_outside = 0;
  for (int i = 0; i < 10; ++i) {
    const double E = energy(states[i], grid).total;
    const double norm = std::sqrt(h_norm_squared(states[i], grid));
    for (double lv : {0.0, 0.5, 1.0}) {
      const double exact = dist_to_sublevel_exact(states[i], SublevelSetSpec(lv), grid);
      const double ref = oracle::projected_descent_distance(states[i], lv, n, 1.0, 50000);
      if (E > lv) {
        rel = std::max(rel, std::abs(exact - ref) / ref);
        ++n_outside;
      } else {
        inside = std::max({inside, exact, ref / norm});
      }
    }
  }
  out.require(rel <= 1e-6, fmt::format("exact vs projected descent rel {} <= 1e-6 ({} cases)", sci(rel), n_outside));
  out.require(inside <= 1e-6, fmt::format("inside cases {} <= 1e-6 ({} cases)", sci(inside), 30 - n_outside));
  return out;
}

// 8: multiplier identity
Outcome multiplier_identity() {
  Outcome out;
  std::vector<double> rel;
  for (int n : {200, 400, 800}) {
    auto traj = transparent(n, 3.0);
    rel.push_back(std::abs(multiplier_identity_residual(traj, WeightRho(1, 2, 1))) / traj.energies.front().total);
  }
  out.require(rel[1] <= 2e-2, "resid/E0(N=400)=" + sci(rel[1]) + " <= 2e-2");
  out.require(min_order(rel) >= 1.0, fmt::format("order={:.2f} >= 1", min_order(rel)));
  return out;
}

// 9: falsifiability through the verify command
Outcome falsifiability() {
  Outcome out;
  const auto dir = fs::temp_directory_path() / "waveguard_acceptance";
  auto exit_of = [&](const char* name) {
    auto cfg = runner::parse_config(
        nlohmann::json::parse(std::ifstream(fs::path(WAVEGUARD_SCENARIO_DIR) / name)));
    return runner::cmd_verify(cfg, dir / name).exit_code;
  };
  const int inflated = exit_of("antidamping_inflated.json");
  const int q06 = exit_of("antidamping_q06.json");
  fs::remove_all(dir);
  out.require(inflated == 1, fmt::format("mu x100 exit={} (expect 1)", inflated));
  out.require(q06 == 2, fmt::format("q=0.6 exit={} (expect 2)", q06));
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "characteristics-oracle equivalence", 5, characteristics_oracle_equivalence},
      {2, "energy identity", 10, energy_identity},
      {3, "monotone decay bound, S = 0", 10, monotone_bound},
      {4, "monotone decay bound, deadzone", 30, deadzone_bound},
      {5, "global anti-damping bound", 30, antidamping_bound},
      {6, "pointwise convergence", 30, pointwise_convergence},
      {7, "distance lemma", 10, distance_lemma},
      {8, "multiplier identity", 10, multiplier_identity},
      {9, "falsifiability", 5, falsifiability},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < c.budget_s, fmt::format("runtime {:.2f} s < {:g} s", secs, c.budget_s));
    failed += o.pass ? 0 : 1;
    std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
