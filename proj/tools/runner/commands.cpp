#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "csv.hpp"
#include "waveguard/errors.hpp"
#include "waveguard/oracle.hpp"

namespace waveguard::runner {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kStationaryThreshold = 1e-6;

struct SimulationRun {
  Trajectory traj;
  bool boundary_warning = false;
};

SimulationRun run_simulation(const ScenarioConfig& config) {
  const Grid grid = config.grid();
  const auto init = make_initial(config.init_kind, config.init, grid);
  LeapfrogSolver solver(grid, config.g, config.F, config.solver_config());
  return {solver.simulate(init.state), init.boundary_warning};
}

json step_failure_json(const StepFailure& e) {
  return {{"kind", e.kind() == StepFailure::Kind::blow_up ? "blow_up" : "boundary_solve"},
          {"time", e.time()},
          {"message", e.what()}};
}

WeightRho weight_for(const ScenarioConfig& config, const CertificateOutcome* cert) {
  if (cert && cert->antidamping) return cert->antidamping->rho;
  if (cert && cert->monotone) return cert->monotone->rho;
  return WeightRho(config.certificate.rho0, config.certificate.rhoL, config.domain.L);
}

json checklist_json(const std::vector<HypothesisCheck>& list) {
  json out = json::array();
  for (const auto& c : list) {
    out.push_back({{"condition", c.name}, {"value", c.value}, {"bound", c.bound}, {"passed", c.passed}});
  }
  return out;
}

json weight_json(const WeightRho& rho) { return {{"rho0", rho.rho0()}, {"rhoL", rho.rhoL()}, {"slope", rho.slope()}}; }

json metrics_json(const ScenarioConfig& config, const SimulationRun& run, const WeightRho& rho, double E_S) {
  const Trajectory& traj = run.traj;
  const auto energies = traj.total_energy();
  const auto times = traj.step_times();
  const double e0 = energies.front();

  const auto residual = energy_identity_residual(traj, config.g, config.F);
  double residual_max = 0.0;
  for (double r : residual) residual_max = std::max(residual_max, std::abs(r));
  double boundary_max = 0.0;
  for (const auto& tr : traj.traces) boundary_max = std::max(boundary_max, std::abs(tr.dxuL + tr.g_of_vL));
  const double multiplier = multiplier_identity_residual(traj, rho);
  const auto rel = [e0](double x) { return e0 > 0.0 ? x / e0 : 0.0; };

  json m;
  m["n_steps"] = traj.traces.size() - 1;
  m["dt"] = traj.dt;
  m["E0"] = e0;
  m["E_final"] = energies.back();
  m["boundary_warning"] = run.boundary_warning;
  m["energy_identity_residual_max"] = residual_max;
  m["energy_identity_residual_rel"] = rel(residual_max);
  m["multiplier_residual"] = multiplier;
  m["multiplier_residual_rel"] = rel(std::abs(multiplier));
  m["multiplier_weight"] = weight_json(rho);
  m["boundary_residual_max"] = boundary_max;
  try {
    const auto fit = fit_decay_rate(times, energies, E_S, {1e-10, 2.0 * config.domain.L});
    m["decay_fit"] = {{"available", true},     {"mu_obs", fit.mu_obs},   {"M_obs", fit.M_obs},
                      {"r_squared", fit.r_squared}, {"t_start", fit.t_start}, {"t_end", fit.t_end},
                      {"n_points", fit.n_points}};
  } catch (const FitUnavailable& e) {
    m["decay_fit"] = {{"available", false}, {"reason", e.what()}};
  }
  const auto lim = stationary_limit(traj, kStationaryThreshold);
  m["stationary_limit"] = {{"u_infinity", lim.u_infinity},
                           {"converged", lim.converged},
                           {"final_dist_stationary", lim.final_distance},
                           {"final_sup_deviation", lim.final_sup_deviation},
                           {"threshold", kStationaryThreshold}};
  return m;
}

void write_json(const fs::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
}

void write_series(const ScenarioConfig& config, const Trajectory& traj, const WeightRho& rho, const fs::path& out) {
  const Grid& grid = traj.grid;
  {
    CsvWriter csv(out / "energy.csv", {"t", "E_total", "E_pot", "E_kin", "E_bnd", "Gamma_rho"});
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
      const auto e = energy(traj.states[k], grid);
      csv.row({traj.times[k], e.total, e.potential, e.kinetic, e.boundary_kinetic,
               lyapunov_gamma(traj.states[k], rho, grid)});
    }
  }
  {
    CsvWriter csv(out / "traces.csv", {"t", "u0", "v0", "dxu0", "vL", "dxuL", "g_vL", "F_v0"});
    for (const auto& tr : traj.traces) csv.row({tr.t, tr.u0, tr.v0, tr.dxu0, tr.vL, tr.dxuL, tr.g_of_vL, tr.F_of_v0});
  }
  if (config.output.emit_snapshots) {
    const long n_steps = static_cast<long>(traj.traces.size()) - 1;
    const long stride = config.output.snapshot_stride > 0 ? config.output.snapshot_stride
                                                          : std::max(1L, n_steps / 50);
    CsvWriter csv(out / "snapshots.csv", {"t", "x", "u", "v"});
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
      const long step = std::lround(traj.times[k] / traj.dt);
      if (step % stride != 0 && k + 1 != traj.states.size()) continue;
      for (std::size_t j = 0; j < grid.n_nodes(); ++j) {
        csv.row({traj.times[k], grid.x(j), traj.states[k].u[j], traj.states[k].v[j]});
      }
    }
  }
}

json base_report(const ScenarioConfig& config, const char* command) {
  return {{"command", command}, {"scenario_hash", scenario_hash(config)}, {"config", to_json(config)}};
}

fs::path prepare(const fs::path& out) {
  fs::create_directories(out);
  return out;
}

}  // namespace

CertificateOutcome certify(const ScenarioConfig& config) {
  if (config.certificate.mode == CertificateMode::none) {
    throw ConfigError("certificate.mode", "a certificate mode (monotone|antidamping) is required");
  }
  CertificateOutcome out;
  out.doc = {{"mode", to_string(config.certificate.mode)}, {"mu_scale", config.certificate.mu_scale}};
  const Grid grid = config.grid();

  try {
    SectorData sector;
    try {
      sector = sector_params(config.g);
    } catch (const NoValidSector& e) {
      throw HypothesisViolated("cond-sect: α1|s| ≤ |g(s)| ≤ α2|s|", e.what());
    }
    out.doc["sector"] = {{"alpha1", sector.alpha1},
                         {"alpha2", sector.alpha2},
                         {"S", sector.S},
                         {"sup_g_sq_on_ball", sector.sup_g_sq_on_ball},
                         {"estimated", sector.estimated}};

    if (config.certificate.mode == CertificateMode::monotone) {
      if (!is_nonincreasing(config.F)) {
        throw HypothesisViolated("F nonincreasing", "forcing law " + config.F.kind_name() + " injects energy");
      }
      auto c = config.certificate.grid_search
                   ? search_monotone_certificate(sector, config.domain.L)
                   : build_monotone_certificate(sector,
                                                WeightRho(config.certificate.rho0, config.certificate.rhoL,
                                                          config.domain.L));
      out.doc["constants"] = {{"rho", weight_json(c.rho)}, {"C1", c.C1},       {"C2", c.C2},
                              {"C3", c.C3},                 {"tau", c.tau},     {"C1_step2", c.C1_step2},
                              {"C2_tau", c.C2_tau},         {"r", c.r},         {"p", c.p},
                              {"E_S", c.E_S},               {"alpha", c.alpha}, {"mu", c.mu},
                              {"M", c.M}};
      out.doc["checklist"] = checklist_json(c.checklist);
      out.doc["checklist"].push_back({{"condition", "F nonincreasing"}, {"value", 0.0}, {"bound", 0.0}, {"passed", true}});
      out.envelope = envelope(c);
      out.monotone = std::move(c);
    } else {
      const auto lip = lipschitz_constant(config.F);
      if (!lip.q_global) throw HypothesisViolated("F globally Lipschitz", "no global Lipschitz constant");
      out.doc["q"] = *lip.q_global;
      auto c = build_antidamping_certificate(*lip.q_global, sector, config.domain.L);
      out.doc["constants"] = {{"q", c.q},
                              {"alpha1", c.alpha1},
                              {"alpha2", c.alpha2},
                              {"epsilon", c.epsilon},
                              {"rho", weight_json(c.rho)},
                              {"M1", c.M1},
                              {"M2", c.M2},
                              {"mu", c.mu},
                              {"M_prefactor", c.M_prefactor}};
      out.doc["checklist"] = checklist_json(c.checklist);
      out.envelope = envelope(c);
      out.antidamping = std::move(c);
    }
    out.feasible = true;
  } catch (const HypothesisViolated& e) {
    out.feasible = false;
    out.failed_condition = e.condition();
    out.message = e.what();
    out.doc["feasible"] = false;
    out.doc["failed_condition"] = e.condition();
    out.doc["message"] = e.what();
    return out;
  }

  out.envelope.mu *= config.certificate.mu_scale;
  out.doc["feasible"] = true;
  if (grid.n_cells() <= kMaxDistanceLemmaCells) {
    out.lemma = distance_lemma_constant(grid);
    out.doc["distance_lemma"] = {{"M1_numeric", out.lemma->M1_numeric}, {"K", out.lemma->K}};
    out.doc["attractivity_constant"] = attractivity_constant(out.lemma->K, out.envelope.M);
  } else {
    out.doc["distance_lemma"] = nullptr;
    out.doc["attractivity_constant"] = nullptr;
  }
  return out;
}

VerifyOutcome verify(const ScenarioConfig& config) {
  VerifyOutcome out;
  out.report = base_report(config, "verify");
  out.certificate = certify(config);
  out.report["certificate"] = out.certificate.doc;
  if (!out.certificate.feasible) {
    out.exit_code = kExitHypothesis;
    out.report["status"] = "hypothesis_violated";
    out.report["exit_code"] = out.exit_code;
    return out;
  }

  std::optional<SimulationRun> sim;
  try {
    sim = run_simulation(config);
  } catch (const StepFailure& e) {
    out.exit_code = kExitSolverFailure;
    out.report["status"] = "solver_failure";
    out.report["failure"] = step_failure_json(e);
    out.report["exit_code"] = out.exit_code;
    return out;
  }
  SimulationRun& run = *sim;
  const Trajectory& traj = run.traj;
  const Grid& grid = traj.grid;
  const DecayEnvelope& env = out.certificate.envelope;
  const WeightRho rho = weight_for(config, &out.certificate);
  out.report["metrics"] = metrics_json(config, run, rho, env.E_S);

  const auto energies = traj.total_energy();
  const auto bound = check_decay_bound(traj.step_times(), energies, env);
  out.report["bound"] = {{"holds", bound.holds},
                         {"worst_margin", bound.worst_margin},
                         {"worst_time", bound.worst_time},
                         {"worst_ratio", bound.worst_ratio},
                         {"slack", kDefaultSlack},
                         {"M", env.M},
                         {"mu", env.mu},
                         {"E_S", env.E_S}};
  bool all_hold = bound.holds;

  if (const auto& fit = out.report["metrics"]["decay_fit"]; fit["available"].get<bool>()) {
    out.report["mu_ratio"] = fit["mu_obs"].get<double>() / env.mu;
  }

  if (out.certificate.antidamping) {
    const auto& c = *out.certificate.antidamping;
    double worst = 0.0;
    bool holds = true;
    for (const auto& s : traj.states) {
      const double e = energy(s, grid).total;
      const double gamma = lyapunov_gamma(s, c.rho, grid);
      const double tol = 1e-12 * std::max(1.0, e);
      holds = holds && gamma >= c.M1 * e - tol && gamma <= c.M2 * e + tol;
      worst = std::min({worst, gamma - c.M1 * e, c.M2 * e - gamma});
    }
    out.report["gamma_sandwich"] = {{"holds", holds}, {"worst_margin", worst}, {"M1", c.M1}, {"M2", c.M2}};
    all_hold = all_hold && holds;
  }

  if (out.certificate.lemma) {
    const double m_prime = attractivity_constant(out.certificate.lemma->K, env.M);
    const double base = std::max(energies.front() - env.E_S, 0.0);
    const bool exact = env.E_S > 0.0 && grid.n_cells() <= kMaxExactDistanceCells;
    if (env.E_S == 0.0 || exact) {
      bool holds = true;
      double worst_ratio = 0.0;
      double worst_time = 0.0;
      for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const double d = env.E_S == 0.0 ? dist_to_stationary(traj.states[k], grid)
                                        : dist_to_sublevel_exact(traj.states[k], SublevelSetSpec(env.E_S), grid);
        const double rhs = m_prime * std::exp(-env.mu * traj.times[k]) * base;
        holds = holds && d * d <= kDefaultSlack * rhs + kBoundAbsFloor;
        if (rhs > 0.0 && d * d / rhs > worst_ratio) {
          worst_ratio = d * d / rhs;
          worst_time = traj.times[k];
        }
      }
      out.report["attractivity"] = {{"checked", true},     {"holds", holds},           {"M_prime", m_prime},
                                    {"worst_ratio", worst_ratio}, {"worst_time", worst_time}};
      all_hold = all_hold && holds;
    } else {
      out.report["attractivity"] = {{"checked", false}, {"reason", "exact sublevel distance needs N <= 64"}};
    }
  } else {
    out.report["attractivity"] = {{"checked", false}, {"reason", "distance lemma needs N <= 512"}};
  }

  out.exit_code = all_hold ? kExitOk : kExitBoundViolation;
  out.report["status"] = all_hold ? "bounds_hold" : "bound_violation";
  out.report["exit_code"] = out.exit_code;
  out.trajectory = std::move(run.traj);
  return out;
}

CommandResult cmd_simulate(const ScenarioConfig& config, const fs::path& out) {
  prepare(out);
  CommandResult res{kExitOk, base_report(config, "simulate")};
  std::optional<CertificateOutcome> cert;
  if (config.certificate.mode != CertificateMode::none) cert = certify(config);
  try {
    const SimulationRun run = run_simulation(config);
    const WeightRho rho = weight_for(config, cert ? &*cert : nullptr);
    const double E_S = cert && cert->feasible ? cert->envelope.E_S : 0.0;
    res.report["metrics"] = metrics_json(config, run, rho, E_S);
    res.report["status"] = "completed";
    write_series(config, run.traj, rho, out);
  } catch (const StepFailure& e) {
    res.exit_code = kExitSolverFailure;
    res.report["status"] = "solver_failure";
    res.report["failure"] = step_failure_json(e);
  }
  res.report["exit_code"] = res.exit_code;
  write_json(out / "report.json", res.report);
  return res;
}

CommandResult cmd_certify(const ScenarioConfig& config, const fs::path& out) {
  prepare(out);
  const auto cert = certify(config);
  json doc = cert.doc;
  doc["scenario_hash"] = scenario_hash(config);
  write_json(out / "certificate.json", doc);
  return {cert.feasible ? kExitOk : kExitHypothesis, doc};
}

CommandResult cmd_verify(const ScenarioConfig& config, const fs::path& out) {
  prepare(out);
  VerifyOutcome v = verify(config);
  json cert = v.certificate.doc;
  cert["scenario_hash"] = scenario_hash(config);
  write_json(out / "certificate.json", cert);
  if (v.trajectory) write_series(config, *v.trajectory, weight_for(config, &v.certificate), out);
  write_json(out / "report.json", v.report);
  return {v.exit_code, v.report};
}

CommandResult cmd_oracle(const ScenarioConfig& config, const fs::path& out) {
  const auto* gain = std::get_if<feedback::LinearGain>(&config.g.params());
  if (!gain || gain->k != 1.0) throw ConfigError("g", "oracle requires g = identity");
  if (!std::holds_alternative<forcing::Zero>(config.F.params())) throw ConfigError("F", "oracle requires F = zero");
  if (config.init_kind != InitialKind::right_moving_pulse) {
    throw ConfigError("init.kind", "oracle requires right_moving_pulse initial data");
  }
  const PulseProfile profile = pulse_profile(config.init);
  if (!profile.negligible_at_ends(config.domain.L)) {
    throw ConfigError("init.params", "oracle requires a pulse negligible (<= 1e-6 A) at both ends");
  }
  prepare(out);

  CommandResult res{kExitOk, base_report(config, "oracle")};
  const auto compare = [&](const ScenarioConfig& c, CsvWriter* csv) {
    const SimulationRun run = run_simulation(c);
    const Grid& grid = run.traj.grid;
    double worst = 0.0;
    for (std::size_t k = 0; k < run.traj.states.size(); ++k) {
      const double t = run.traj.times[k];
      const FieldState exact = characteristics_oracle(profile, grid, t);
      const FieldState& s = run.traj.states[k];
      double eu = 0.0;
      double ev = 0.0;
      for (std::size_t j = 0; j < grid.n_nodes(); ++j) {
        eu = std::max(eu, std::abs(s.u[j] - exact.u[j]));
        ev = std::max(ev, std::abs(s.v[j] - exact.v[j]));
      }
      worst = std::max(worst, eu);
      if (csv) {
        const double es = energy(s, grid).total;
        const double eo = energy(exact, grid).total;
        csv->row({t, eu, ev, es, eo, es - eo});
      }
    }
    return std::pair{worst, run.traj.energies.back().total / run.traj.energies.front().total};
  };

  try {
    CsvWriter csv(out / "comparison.csv", {"t", "max_err_u", "max_err_v", "E_sim", "E_oracle", "E_err"});
    const auto [worst, ratio] = compare(config, &csv);
    res.report["max_err_u"] = worst;
    res.report["max_err_u_rel"] = worst / std::abs(config.init.amplitude);
    res.report["E_final_over_E0"] = ratio;

    if (!config.convergence_N.empty()) {
      CsvWriter conv(out / "convergence.csv", {"N", "max_err_u", "order"});
      json table = json::array();
      double prev_err = 0.0;
      int prev_n = 0;
      for (int n : config.convergence_N) {
        ScenarioConfig c = config;
        c.domain.N = n;
        const double err = compare(c, nullptr).first;
        const double order = prev_n > 0 ? std::log(prev_err / err) / std::log(double(n) / prev_n) : std::nan("");
        conv.row({double(n), err, order});
        table.push_back({{"N", n}, {"max_err_u", err}, {"order", prev_n > 0 ? json(order) : json(nullptr)}});
        prev_err = err;
        prev_n = n;
      }
      res.report["convergence"] = table;
    }
    res.report["status"] = "completed";
  } catch (const StepFailure& e) {
    res.exit_code = kExitSolverFailure;
    res.report["status"] = "solver_failure";
    res.report["failure"] = step_failure_json(e);
  }
  res.report["exit_code"] = res.exit_code;
  write_json(out / "report.json", res.report);
  return res;
}

unsigned sweep_threads_from_env() {
  if (const char* env = std::getenv("WAVEGUARD_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct SweepAxis {
  std::string path;
  std::vector<json> values;
};

void set_path(json& doc, const std::string& path, const json& value) {
  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (!node->is_object()) throw ConfigError(path, "sweep path does not address an object member");
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

std::vector<SweepAxis> parse_sweep(const json& spec) {
  if (!spec.is_object() || !spec.contains("parameters") || !spec.at("parameters").is_array()) {
    throw ConfigError("sweep.parameters", "expected {\"parameters\": [{\"path\": ..., \"values\": [...]}]}");
  }
  for (const auto& [key, value] : spec.items()) {
    if (key != "parameters") throw ConfigError("sweep." + key, "unknown key");
  }
  std::vector<SweepAxis> axes;
  for (const auto& p : spec.at("parameters")) {
    if (!p.is_object() || !p.contains("path") || !p.at("path").is_string() || !p.contains("values") ||
        !p.at("values").is_array() || p.at("values").empty()) {
      throw ConfigError("sweep.parameters", "each entry needs a string path and a nonempty values array");
    }
    for (const auto& [key, value] : p.items()) {
      if (key != "path" && key != "values") throw ConfigError("sweep.parameters." + key, "unknown key");
    }
    axes.push_back({p.at("path").get<std::string>(), p.at("values").get<std::vector<json>>()});
  }
  if (axes.empty()) throw ConfigError("sweep.parameters", "at least one parameter is required");
  return axes;
}

std::string cell(const json& v) {
  if (v.is_number()) return fmt_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

}  // namespace

CommandResult cmd_sweep(const json& base, const json& spec, const fs::path& out, unsigned threads) {
  const auto axes = parse_sweep(spec);
  std::size_t total = 1;
  for (const auto& a : axes) total *= a.values.size();

  std::vector<std::vector<json>> points(total);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rem = i;
    points[i].resize(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
      points[i][a] = axes[a].values[rem % axes[a].values.size()];
      rem /= axes[a].values.size();
    }
  }

  std::vector<json> rows(total);
  const auto evaluate = [&](std::size_t i) {
    json row = {{"mu_cert", nullptr}, {"mu_obs", nullptr}, {"E_S", nullptr},
                {"bound_holds", nullptr}, {"final_dist_stationary", nullptr}};
    try {
      json doc = base;
      for (std::size_t a = 0; a < axes.size(); ++a) set_path(doc, axes[a].path, points[i][a]);
      const ScenarioConfig config = parse_config(doc);
      VerifyOutcome v = verify(config);
      if (v.certificate.feasible) {
        row["mu_cert"] = v.certificate.envelope.mu;
        row["E_S"] = v.certificate.envelope.E_S;
      }
      if (v.trajectory) {
        const auto& m = v.report["metrics"];
        if (m["decay_fit"]["available"].get<bool>()) row["mu_obs"] = m["decay_fit"]["mu_obs"];
        row["bound_holds"] = v.report["bound"]["holds"].get<bool>() ? 1 : 0;
        row["final_dist_stationary"] = m["stationary_limit"]["final_dist_stationary"];
      }
      row["status"] = v.report["status"];
      row["detail"] = v.certificate.feasible ? "" : v.certificate.failed_condition;
      if (v.report.contains("failure")) row["detail"] = v.report["failure"]["message"];
      row["exit_code"] = v.exit_code;
    } catch (const ConfigError& e) {
      row["status"] = "config_error";
      row["detail"] = e.what();
      row["exit_code"] = kExitConfigError;
    } catch (const std::exception& e) {
      row["status"] = "error";
      row["detail"] = e.what();
      row["exit_code"] = kExitSolverFailure;
    }
    rows[i] = std::move(row);
  };

  std::atomic<std::size_t> next{0};
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), total));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < total; i = next++) evaluate(i);
      });
    }
  }

  prepare(out);
  std::vector<std::string> header;
  for (const auto& a : axes) header.push_back(a.path);
  for (const char* c : {"mu_cert", "mu_obs", "E_S", "bound_holds", "final_dist_stationary", "status", "detail"}) {
    header.emplace_back(c);
  }
  CsvWriter csv(out / "summary.csv", header);
  json report = {{"command", "sweep"}, {"rows", json::array()}};
  for (std::size_t i = 0; i < total; ++i) {
    std::vector<std::string> cells;
    json params;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      cells.push_back(cell(points[i][a]));
      params[axes[a].path] = points[i][a];
    }
    for (const char* c : {"mu_cert", "mu_obs", "E_S", "bound_holds", "final_dist_stationary", "status", "detail"}) {
      cells.push_back(cell(rows[i][c]));
    }
    csv.cells(cells);
    json r = rows[i];
    r["params"] = params;
    report["rows"].push_back(r);
  }
  write_json(out / "report.json", report);
  return {kExitOk, report};
}

}  // namespace waveguard::runner
