#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "config.hpp"
#include "waveguard/certificates.hpp"
#include "waveguard/diagnostics.hpp"
#include "waveguard/solver.hpp"

namespace waveguard::runner {

enum ExitCode : int {
  kExitOk = 0,
  kExitBoundViolation = 1,
  kExitHypothesis = 2,
  kExitSolverFailure = 3,
  kExitConfigError = 4,
};

struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::json report;
};

/// Certificate for the configured mode, or the reason it is infeasible.
struct CertificateOutcome {
  bool feasible = false;
  std::string failed_condition;
  std::string message;
  std::optional<MonotoneCertificate> monotone;
  std::optional<AntiDampingCertificate> antidamping;
  std::optional<DistanceLemmaConstant> lemma;
  DecayEnvelope envelope;  ///< with mu_scale applied
  nlohmann::json doc;
};

/// Throws ConfigError when the mode is none.
CertificateOutcome certify(const ScenarioConfig& config);

/// Outcome of simulate + certify + bound checks, without writing files.
struct VerifyOutcome {
  int exit_code = kExitOk;
  CertificateOutcome certificate;
  std::optional<Trajectory> trajectory;
  nlohmann::json report;
};

VerifyOutcome verify(const ScenarioConfig& config);

CommandResult cmd_simulate(const ScenarioConfig& config, const std::filesystem::path& out);
CommandResult cmd_certify(const ScenarioConfig& config, const std::filesystem::path& out);
CommandResult cmd_verify(const ScenarioConfig& config, const std::filesystem::path& out);
CommandResult cmd_oracle(const ScenarioConfig& config, const std::filesystem::path& out);

/// spec = {"parameters": [{"path": "F.params.q", "values": [...]}, ...]};
/// the cartesian grid is evaluated in parallel (at most `threads` workers)
/// and summary.csv is written in grid order.
CommandResult cmd_sweep(const nlohmann::json& base, const nlohmann::json& spec, const std::filesystem::path& out,
                        unsigned threads);

/// WAVEGUARD_THREADS if set to a positive integer, else hardware concurrency.
unsigned sweep_threads_from_env();

}  // namespace waveguard::runner
