#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "runner/commands.hpp"
#include "runner/config.hpp"
#include "waveguard/errors.hpp"

namespace fs = std::filesystem;
using namespace waveguard;
using namespace waveguard::runner;

namespace {

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ConfigError(what, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json read_json(const std::string& path, const char* what) {
  try {
    return nlohmann::json::parse(read_file(path, what));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(what, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"waveguard: wave equation with nonlinear boundary feedback; simulation and decay certificates"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string sweep_path;
  const auto add = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "scenario JSON")->required();
    sub->add_option("--out", out_dir, "output directory (overrides output.directory)");
    return sub;
  };
  auto* simulate = add("simulate", "run the solver and write energy, traces and report");
  auto* certify = add("certify", "compute the decay certificate and its hypothesis checklist");
  auto* verify = add("verify", "simulate, certify and check the decay bounds");
  auto* sweep = add("sweep", "verify over a parameter grid and write summary.csv");
  sweep->add_option("--sweep", sweep_path, "sweep specification JSON")->required();
  auto* oracle = add("oracle", "compare the transparent case against the exact solution");

  CLI11_PARSE(app, argc, argv);

  try {
    const nlohmann::json doc = read_json(config_path, "--config");
    const ScenarioConfig config = parse_config(doc);
    const fs::path out = out_dir.empty() ? fs::path(config.output.directory) : fs::path(out_dir);

    CommandResult res;
    if (simulate->parsed()) {
      res = cmd_simulate(config, out);
    } else if (certify->parsed()) {
      res = cmd_certify(config, out);
    } else if (verify->parsed()) {
      res = cmd_verify(config, out);
    } else if (sweep->parsed()) {
      res = cmd_sweep(doc, read_json(sweep_path, "--sweep"), out, sweep_threads_from_env());
    } else if (oracle->parsed()) {
      res = cmd_oracle(config, out);
    }
    std::cout << (res.report.contains("status") ? res.report["status"].get<std::string>() : "done")
              << " (exit " << res.exit_code << "), outputs in " << out.string() << '\n';
    if (res.report.contains("message")) std::cerr << res.report["message"].get<std::string>() << '\n';
    return res.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ContractViolation& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const HypothesisViolated& e) {
    std::cerr << "hypothesis violated: " << e.what() << '\n';
    return kExitHypothesis;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolverFailure;
  }
}
