#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "waveguard/initial_data.hpp"
#include "waveguard/nonlinearities.hpp"
#include "waveguard/solver.hpp"

namespace waveguard::runner {

/// Schema violation; key() is the dotted path of the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

enum class CertificateMode { none, monotone, antidamping };

struct DomainConfig {
  double L = 1.0;
  int N = 0;
  double cfl_lambda = 0.9;
  double t_final = 0.0;
  int sample_stride = 1;
  double boundary_tol = 1e-12;
  int boundary_max_iter = 100;
};

struct CertificateConfig {
  CertificateMode mode = CertificateMode::none;
  double rho0 = 1.0;
  double rhoL = 2.0;
  bool grid_search = false;
  /// Multiplies the certified rate before verification (falsifiability hook).
  double mu_scale = 1.0;
};

struct OutputConfig {
  std::string directory = "out";
  bool emit_snapshots = false;
  int snapshot_stride = 0;  ///< in steps; 0 picks about 50 snapshots per run
};

struct ScenarioConfig {
  DomainConfig domain;
  FeedbackLaw g = FeedbackLaw::identity();
  ForcingLaw F = ForcingLaw::zero();
  InitialKind init_kind = InitialKind::right_moving_pulse;
  InitialParams init;
  CertificateConfig certificate;
  OutputConfig output;
  std::vector<int> convergence_N;  ///< oracle convergence table

  Grid grid() const { return Grid(domain.L, domain.N); }
  SolverConfig solver_config() const;
};

ScenarioConfig parse_config(const nlohmann::json& doc);
/// Throws ConfigError (key "$") on malformed JSON.
ScenarioConfig parse_config(const std::string& text);

/// Normalized form with every default filled in; parse_config(to_json(c))
/// reproduces c.
nlohmann::json to_json(const ScenarioConfig& config);
nlohmann::json law_to_json(const FeedbackLaw& g);
nlohmann::json law_to_json(const ForcingLaw& F);

/// FNV-1a of the normalized config, as 16 hex digits.
std::string scenario_hash(const ScenarioConfig& config);

std::string to_string(CertificateMode mode);

}  // namespace waveguard::runner
