#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include <fmt/format.h>

#include "waveguard/errors.hpp"

namespace waveguard::runner {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void allow_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    if (!known) throw ConfigError(join(path, key), "unknown key");
  }
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double number(const json& obj, const std::string& path, const char* key, std::optional<double> fallback) {
  const json* v = find(obj, key);
  if (!v) {
    if (fallback) return *fallback;
    throw ConfigError(join(path, key), "required number is missing");
  }
  if (!v->is_number()) throw ConfigError(join(path, key), "expected a number");
  const double x = v->get<double>();
  if (!std::isfinite(x)) throw ConfigError(join(path, key), "must be finite");
  return x;
}

int integer(const json& obj, const std::string& path, const char* key, std::optional<int> fallback) {
  const json* v = find(obj, key);
  if (!v) {
    if (fallback) return *fallback;
    throw ConfigError(join(path, key), "required integer is missing");
  }
  if (!v->is_number_integer()) throw ConfigError(join(path, key), "expected an integer");
  return v->get<int>();
}

bool boolean(const json& obj, const std::string& path, const char* key, bool fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_boolean()) throw ConfigError(join(path, key), "expected true or false");
  return v->get<bool>();
}

std::string string(const json& obj, const std::string& path, const char* key, std::optional<std::string> fallback) {
  const json* v = find(obj, key);
  if (!v) {
    if (fallback) return *fallback;
    throw ConfigError(join(path, key), "required string is missing");
  }
  if (!v->is_string()) throw ConfigError(join(path, key), "expected a string");
  return v->get<std::string>();
}

std::vector<double> numbers(const json& obj, const std::string& path, const char* key) {
  const json* v = find(obj, key);
  if (!v || !v->is_array()) throw ConfigError(join(path, key), "expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : *v) {
    if (!x.is_number()) throw ConfigError(join(path, key), "expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

void require_range(bool ok, const std::string& key, const std::string& expected) {
  if (!ok) throw ConfigError(key, "out of range, expected " + expected);
}

// A law entry is either "kind" or {"kind": ..., "params": {...}}.
std::pair<std::string, json> kind_and_params(const json& doc, const std::string& path) {
  if (doc.is_string()) return {doc.get<std::string>(), json::object()};
  allow_keys(doc, path, {"kind", "params"});
  json params = doc.contains("params") ? doc.at("params") : json::object();
  if (!params.is_object()) throw ConfigError(path + ".params", "expected an object");
  return {string(doc, path, "kind", std::nullopt), params};
}

template <class Law, class Build>
Law build_law(const std::string& path, Build&& build) {
  try {
    return build();
  } catch (const ContractViolation& e) {
    throw ConfigError(path, e.what());
  }
}

FeedbackLaw parse_feedback(const json& doc) {
  const std::string path = "g";
  const auto [kind, p] = kind_and_params(doc, path);
  const std::string pp = path + ".params";
  return build_law<FeedbackLaw>(path, [&, &kind = kind, &p = p] {
    if (kind == "identity") {
      allow_keys(p, pp, {});
      return FeedbackLaw::identity();
    }
    if (kind == "linear_gain") {
      allow_keys(p, pp, {"k"});
      return FeedbackLaw::linear_gain(number(p, pp, "k", std::nullopt));
    }
    if (kind == "deadzone") {
      allow_keys(p, pp, {"d"});
      return FeedbackLaw::deadzone(number(p, pp, "d", std::nullopt));
    }
    if (kind == "saturation") {
      allow_keys(p, pp, {"k", "cap"});
      return FeedbackLaw::saturation(number(p, pp, "k", std::nullopt), number(p, pp, "cap", std::nullopt));
    }
    if (kind == "power_sector") {
      allow_keys(p, pp, {"a", "b"});
      return FeedbackLaw::power_sector(number(p, pp, "a", std::nullopt), number(p, pp, "b", std::nullopt));
    }
    if (kind == "tabulated") {
      allow_keys(p, pp, {"s", "g"});
      return FeedbackLaw::tabulated(numbers(p, pp, "s"), numbers(p, pp, "g"));
    }
    throw ConfigError(path + ".kind",
                      "unknown feedback kind '" + kind +
                          "', expected identity|linear_gain|deadzone|saturation|power_sector|tabulated");
  });
}

ForcingLaw parse_forcing(const json& doc) {
  const std::string path = "F";
  const auto [kind, p] = kind_and_params(doc, path);
  const std::string pp = path + ".params";
  return build_law<ForcingLaw>(path, [&, &kind = kind, &p = p] {
    if (kind == "zero") {
      allow_keys(p, pp, {});
      return ForcingLaw::zero();
    }
    if (kind == "linear") {
      allow_keys(p, pp, {"c"});
      return ForcingLaw::linear(number(p, pp, "c", std::nullopt));
    }
    if (kind == "tanh_antidamping") {
      allow_keys(p, pp, {"q"});
      return ForcingLaw::tanh_antidamping(number(p, pp, "q", std::nullopt));
    }
    if (kind == "monotone_damping") {
      allow_keys(p, pp, {"k"});
      return ForcingLaw::monotone_damping(number(p, pp, "k", std::nullopt));
    }
    if (kind == "piecewise_linear") {
      allow_keys(p, pp, {"q_inner", "q_outer", "knee"});
      return ForcingLaw::piecewise_linear(number(p, pp, "q_inner", std::nullopt),
                                          number(p, pp, "q_outer", std::nullopt),
                                          number(p, pp, "knee", std::nullopt));
    }
    throw ConfigError(path + ".kind", "unknown forcing kind '" + kind +
                                          "', expected zero|linear|tanh_antidamping|monotone_damping|piecewise_linear");
  });
}

void parse_init(const json& doc, ScenarioConfig& c) {
  const std::string path = "init";
  const auto [kind, p] = kind_and_params(doc, path);
  try {
    c.init_kind = parse_initial_kind(kind);
  } catch (const ContractViolation& e) {
    throw ConfigError(path + ".kind", e.what());
  }
  const std::string pp = path + ".params";
  allow_keys(p, pp, {"amplitude", "center", "width", "mode", "offset", "shape"});
  InitialParams d;
  c.init.amplitude = number(p, pp, "amplitude", d.amplitude);
  c.init.center = number(p, pp, "center", d.center);
  c.init.width = number(p, pp, "width", d.width);
  c.init.mode = integer(p, pp, "mode", d.mode);
  c.init.offset = number(p, pp, "offset", d.offset);
  const std::string shape = string(p, pp, "shape", "gaussian_derivative");
  if (shape == "gaussian_derivative") {
    c.init.shape = PulseShape::gaussian_derivative;
  } else if (shape == "gaussian") {
    c.init.shape = PulseShape::gaussian;
  } else {
    throw ConfigError(pp + ".shape", "expected gaussian_derivative|gaussian");
  }
  require_range(c.init.width > 0.0, pp + ".width", "> 0");
  require_range(c.init.mode >= 1, pp + ".mode", ">= 1");
}

}  // namespace

SolverConfig ScenarioConfig::solver_config() const {
  SolverConfig s;
  s.cfl_lambda = domain.cfl_lambda;
  s.t_final = domain.t_final;
  s.sample_stride = domain.sample_stride;
  s.boundary_tol = domain.boundary_tol;
  s.boundary_max_iter = domain.boundary_max_iter;
  return s;
}

ScenarioConfig parse_config(const json& doc) {
  allow_keys(doc, "", {"domain", "g", "F", "init", "certificate", "output", "oracle"});
  ScenarioConfig c;

  const json* domain = find(doc, "domain");
  if (!domain) throw ConfigError("domain", "required section is missing");
  allow_keys(*domain, "domain",
             {"L", "N", "cfl_lambda", "t_final", "sample_stride", "boundary_tol", "boundary_max_iter"});
  auto& d = c.domain;
  d.L = number(*domain, "domain", "L", 1.0);
  d.N = integer(*domain, "domain", "N", std::nullopt);
  d.cfl_lambda = number(*domain, "domain", "cfl_lambda", 0.9);
  d.t_final = number(*domain, "domain", "t_final", std::nullopt);
  d.sample_stride = integer(*domain, "domain", "sample_stride", 1);
  d.boundary_tol = number(*domain, "domain", "boundary_tol", 1e-12);
  d.boundary_max_iter = integer(*domain, "domain", "boundary_max_iter", 100);
  require_range(d.L > 0.0, "domain.L", "> 0");
  require_range(d.N >= 4, "domain.N", "an integer >= 4");
  require_range(d.cfl_lambda > 0.0 && d.cfl_lambda <= 1.0, "domain.cfl_lambda", "(0, 1]");
  require_range(d.t_final > 0.0, "domain.t_final", "> 0");
  require_range(d.sample_stride >= 1, "domain.sample_stride", ">= 1");
  require_range(d.boundary_tol > 0.0, "domain.boundary_tol", "> 0");
  require_range(d.boundary_max_iter >= 1, "domain.boundary_max_iter", ">= 1");

  for (const char* key : {"g", "F", "init"}) {
    if (!doc.contains(key)) throw ConfigError(key, "required entry is missing");
  }
  c.g = parse_feedback(doc.at("g"));
  c.F = parse_forcing(doc.at("F"));
  parse_init(doc.at("init"), c);

  if (const json* cert = find(doc, "certificate")) {
    allow_keys(*cert, "certificate", {"mode", "rho0", "rhoL", "grid_search", "mu_scale"});
    const std::string mode = string(*cert, "certificate", "mode", "none");
    if (mode == "none") {
      c.certificate.mode = CertificateMode::none;
    } else if (mode == "monotone") {
      c.certificate.mode = CertificateMode::monotone;
    } else if (mode == "antidamping") {
      c.certificate.mode = CertificateMode::antidamping;
    } else {
      throw ConfigError("certificate.mode", "expected none|monotone|antidamping");
    }
    c.certificate.rho0 = number(*cert, "certificate", "rho0", 1.0);
    c.certificate.rhoL = number(*cert, "certificate", "rhoL", 2.0);
    c.certificate.grid_search = boolean(*cert, "certificate", "grid_search", false);
    c.certificate.mu_scale = number(*cert, "certificate", "mu_scale", 1.0);
    require_range(c.certificate.rho0 > 0.0, "certificate.rho0", "> 0");
    require_range(c.certificate.rhoL > c.certificate.rho0, "certificate.rhoL", "> rho0");
    require_range(c.certificate.mu_scale > 0.0, "certificate.mu_scale", "> 0");
  }

  if (const json* out = find(doc, "output")) {
    allow_keys(*out, "output", {"directory", "emit_snapshots", "snapshot_stride"});
    c.output.directory = string(*out, "output", "directory", "out");
    c.output.emit_snapshots = boolean(*out, "output", "emit_snapshots", false);
    c.output.snapshot_stride = integer(*out, "output", "snapshot_stride", 0);
    require_range(c.output.snapshot_stride >= 0, "output.snapshot_stride", ">= 0");
  }

  if (const json* oracle = find(doc, "oracle")) {
    allow_keys(*oracle, "oracle", {"convergence_N"});
    if (const json* ns = find(*oracle, "convergence_N")) {
      if (!ns->is_array()) throw ConfigError("oracle.convergence_N", "expected an array of integers");
      for (const auto& n : *ns) {
        if (!n.is_number_integer() || n.get<int>() < 4) {
          throw ConfigError("oracle.convergence_N", "expected integers >= 4");
        }
        c.convergence_N.push_back(n.get<int>());
      }
    }
  }
  return c;
}

ScenarioConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

json law_to_json(const FeedbackLaw& g) {
  json params = std::visit(
      [](const auto& p) -> json {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, feedback::LinearGain>) return {{"k", p.k}};
        if constexpr (std::is_same_v<P, feedback::Deadzone>) return {{"d", p.d}};
        if constexpr (std::is_same_v<P, feedback::Saturation>) return {{"k", p.k}, {"cap", p.cap}};
        if constexpr (std::is_same_v<P, feedback::PowerSector>) return {{"a", p.a}, {"b", p.b}};
        if constexpr (std::is_same_v<P, feedback::Tabulated>) return {{"s", p.s}, {"g", p.g}};
      },
      g.params());
  return {{"kind", g.kind_name()}, {"params", params}};
}

json law_to_json(const ForcingLaw& F) {
  json params = std::visit(
      [](const auto& p) -> json {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, forcing::Zero>) return json::object();
        if constexpr (std::is_same_v<P, forcing::Linear>) return {{"c", p.c}};
        if constexpr (std::is_same_v<P, forcing::TanhAntidamping>) return {{"q", p.q}};
        if constexpr (std::is_same_v<P, forcing::MonotoneDamping>) return {{"k", p.k}};
        if constexpr (std::is_same_v<P, forcing::PiecewiseLinear>) {
          return {{"q_inner", p.q_inner}, {"q_outer", p.q_outer}, {"knee", p.knee}};
        }
      },
      F.params());
  return {{"kind", F.kind_name()}, {"params", params}};
}

json to_json(const ScenarioConfig& c) {
  const auto& d = c.domain;
  json doc;
  doc["domain"] = {{"L", d.L},
                   {"N", d.N},
                   {"cfl_lambda", d.cfl_lambda},
                   {"t_final", d.t_final},
                   {"sample_stride", d.sample_stride},
                   {"boundary_tol", d.boundary_tol},
                   {"boundary_max_iter", d.boundary_max_iter}};
  doc["g"] = law_to_json(c.g);
  doc["F"] = law_to_json(c.F);
  doc["init"] = {{"kind", to_string(c.init_kind)},
                 {"params",
                  {{"amplitude", c.init.amplitude},
                   {"center", c.init.center},
                   {"width", c.init.width},
                   {"mode", c.init.mode},
                   {"offset", c.init.offset},
                   {"shape", c.init.shape == PulseShape::gaussian ? "gaussian" : "gaussian_derivative"}}}};
  doc["certificate"] = {{"mode", to_string(c.certificate.mode)},
                        {"rho0", c.certificate.rho0},
                        {"rhoL", c.certificate.rhoL},
                        {"grid_search", c.certificate.grid_search},
                        {"mu_scale", c.certificate.mu_scale}};
  doc["output"] = {{"directory", c.output.directory},
                   {"emit_snapshots", c.output.emit_snapshots},
                   {"snapshot_stride", c.output.snapshot_stride}};
  doc["oracle"] = {{"convergence_N", c.convergence_N}};
  return doc;
}

std::string scenario_hash(const ScenarioConfig& config) {
  json doc = to_json(config);
  doc.erase("output");
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : doc.dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return fmt::format("{:016x}", h);
}

std::string to_string(CertificateMode mode) {
  switch (mode) {
    case CertificateMode::none: return "none";
    case CertificateMode::monotone: return "monotone";
    case CertificateMode::antidamping: return "antidamping";
  }
  return "none";
}

}  // namespace waveguard::runner
