#include "waveguard/initial_data.hpp"

#include <cmath>
#include <numbers>

#include "waveguard/errors.hpp"

namespace waveguard {

namespace {

const double kSqrtE = std::sqrt(std::numbers::e);

}  // namespace

double PulseProfile::value(double x) const {
  const double s = (x - center) / width;
  if (shape == PulseShape::gaussian) return amplitude * std::exp(-s * s);
  return amplitude * kSqrtE * s * std::exp(-0.5 * s * s);
}

double PulseProfile::derivative(double x) const {
  const double s = (x - center) / width;
  if (shape == PulseShape::gaussian) return -2.0 * amplitude * s * std::exp(-s * s) / width;
  return amplitude * kSqrtE * (1.0 - s * s) * std::exp(-0.5 * s * s) / width;
}

bool PulseProfile::negligible_at_ends(double length) const {
  const double tol = 1e-6 * std::abs(amplitude);
  for (double x : {0.0, length}) {
    if (std::abs(value(x)) > tol || width * std::abs(derivative(x)) > tol) return false;
  }
  return true;
}

InitialKind parse_initial_kind(const std::string& name) {
  if (name == "gaussian_bump") return InitialKind::gaussian_bump;
  if (name == "right_moving_pulse") return InitialKind::right_moving_pulse;
  if (name == "sine_mode") return InitialKind::sine_mode;
  if (name == "constant_offset") return InitialKind::constant_offset;
  throw ContractViolation("unknown initial data kind '" + name + "'");
}

std::string to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::gaussian_bump: return "gaussian_bump";
    case InitialKind::right_moving_pulse: return "right_moving_pulse";
    case InitialKind::sine_mode: return "sine_mode";
    case InitialKind::constant_offset: return "constant_offset";
  }
  return "unknown";
}

PulseProfile pulse_profile(const InitialParams& params) {
  return PulseProfile{params.shape, params.amplitude, params.center, params.width};
}

InitialData make_initial(InitialKind kind, const InitialParams& params, const Grid& grid) {
  if (!std::isfinite(params.amplitude) || !std::isfinite(params.offset)) {
    throw ContractViolation("initial data parameters must be finite");
  }
  const bool pulse = kind == InitialKind::gaussian_bump || kind == InitialKind::right_moving_pulse;
  if (pulse && !(params.width > 0.0)) throw ContractViolation("pulse width must be positive");
  if (kind == InitialKind::sine_mode && params.mode < 1) throw ContractViolation("sine mode index must be >= 1");

  InitialData out{FieldState::zeros(grid), false};
  auto& u = out.state.u;
  auto& v = out.state.v;
  const double L = grid.length();

  switch (kind) {
    case InitialKind::gaussian_bump:
    case InitialKind::right_moving_pulse: {
      PulseProfile w = pulse_profile(params);
      if (kind == InitialKind::gaussian_bump) w.shape = PulseShape::gaussian;
      for (std::size_t j = 0; j < u.size(); ++j) {
        u[j] = w.value(grid.x(j));
        if (kind == InitialKind::right_moving_pulse) v[j] = -w.derivative(grid.x(j));
      }
      out.boundary_warning = !w.negligible_at_ends(L);
      break;
    }
    case InitialKind::sine_mode: {
      const double k = params.mode * std::numbers::pi / L;
      for (std::size_t j = 0; j < u.size(); ++j) u[j] = params.amplitude * std::sin(k * grid.x(j));
      break;
    }
    case InitialKind::constant_offset:
      for (double& x : u) x = params.offset;
      break;
  }
  return out;
}

}  // namespace waveguard
