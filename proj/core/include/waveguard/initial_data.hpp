#pragma once

#include <string>

#include "waveguard/grid.hpp"
#include "waveguard/state_space.hpp"

namespace waveguard {

enum class PulseShape {
  gaussian,             ///< A exp(-s^2)
  gaussian_derivative,  ///< A sqrt(e) s exp(-s^2 / 2); peak |w| = A
};

/// w(x) with s = (x - center) / width.
struct PulseProfile {
  PulseShape shape = PulseShape::gaussian_derivative;
  double amplitude = 1.0;
  double center = 0.5;
  double width = 0.05;

  double value(double x) const;
  double derivative(double x) const;
  /// True when |w| and width * |w'| are below 1e-6 * |A| at x = 0 and x = L.
  bool negligible_at_ends(double length) const;
};

enum class InitialKind { gaussian_bump, right_moving_pulse, sine_mode, constant_offset };

InitialKind parse_initial_kind(const std::string& name);
std::string to_string(InitialKind kind);

struct InitialParams {
  double amplitude = 1.0;
  double center = 0.5;
  double width = 0.05;
  int mode = 1;         ///< sine_mode: u = A sin(m pi x / L)
  double offset = 0.0;  ///< constant_offset: u = c
  PulseShape shape = PulseShape::gaussian_derivative;  ///< right_moving_pulse only
};

struct InitialData {
  FieldState state;
  /// The pulse is not negligible at a boundary (support touches x = 0 or L).
  bool boundary_warning = false;
};

/// gaussian_bump: u = A exp(-(x - x0)^2 / w^2), v = 0.
/// right_moving_pulse: u = w(x), v = -w'(x).
/// sine_mode: u = A sin(m pi x / L), v = 0.
/// constant_offset: u = c, v = 0.
InitialData make_initial(InitialKind kind, const InitialParams& params, const Grid& grid);

/// The profile used by right_moving_pulse for the given parameters.
PulseProfile pulse_profile(const InitialParams& params);

}  // namespace waveguard
