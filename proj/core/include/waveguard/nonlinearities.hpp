#pragma once

// Scalar boundary laws: the velocity feedback g at x = L and the boundary
// forcing F in the dynamic condition at x = 0.
//
// Both are small value types wrapping a std::variant of parameter structs.
// Built-in families carry analytic sector / Lipschitz metadata; the tabulated
// feedback falls back to sampled estimates.

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace waveguard {

namespace feedback {
struct LinearGain {
  double k;
};
/// g(s) = sign(s) * max(|s| - d, 0)
struct Deadzone {
  double d;
};
/// g(s) = clamp(k s, -cap, cap)
struct Saturation {
  double k;
  double cap;
};
/// g(s) = a s + b s^3
struct PowerSector {
  double a;
  double b;
};
/// Piecewise-linear interpolation of a nondecreasing table, extended
/// linearly beyond the ends with the end-segment slopes.
struct Tabulated {
  std::vector<double> s;
  std::vector<double> g;
};
}  // namespace feedback

class FeedbackLaw {
 public:
  using Params = std::variant<feedback::LinearGain, feedback::Deadzone, feedback::Saturation,
                              feedback::PowerSector, feedback::Tabulated>;

  /// Validates parameters (nondecreasing, continuous, g(0) = 0); throws
  /// ContractViolation otherwise.
  explicit FeedbackLaw(Params params);

  static FeedbackLaw linear_gain(double k) { return FeedbackLaw(feedback::LinearGain{k}); }
  static FeedbackLaw identity() { return linear_gain(1.0); }
  static FeedbackLaw deadzone(double d) { return FeedbackLaw(feedback::Deadzone{d}); }
  static FeedbackLaw saturation(double k, double cap) { return FeedbackLaw(feedback::Saturation{k, cap}); }
  static FeedbackLaw power_sector(double a, double b) { return FeedbackLaw(feedback::PowerSector{a, b}); }
  static FeedbackLaw tabulated(std::vector<double> s, std::vector<double> g) {
    return FeedbackLaw(feedback::Tabulated{std::move(s), std::move(g)});
  }

  double operator()(double s) const;
  /// Derivative (right derivative at kinks); used by the Newton boundary solve.
  double slope(double s) const;

  const Params& params() const noexcept { return params_; }
  std::string kind_name() const;

 private:
  Params params_;
};

namespace forcing {
struct Zero {};
/// F(s) = c s; c > 0 injects energy, c < 0 damps.
struct Linear {
  double c;
};
/// F(s) = q tanh(s)
struct TanhAntidamping {
  double q;
};
/// F(s) = -k tanh(s)
struct MonotoneDamping {
  double k;
};
/// Slope q_inner on |s| <= knee, q_outer outside; odd and continuous.
struct PiecewiseLinear {
  double q_inner;
  double q_outer;
  double knee;
};
}  // namespace forcing

class ForcingLaw {
 public:
  using Params = std::variant<forcing::Zero, forcing::Linear, forcing::TanhAntidamping, forcing::MonotoneDamping,
                              forcing::PiecewiseLinear>;

  explicit ForcingLaw(Params params);

  static ForcingLaw zero() { return ForcingLaw(forcing::Zero{}); }
  static ForcingLaw linear(double c) { return ForcingLaw(forcing::Linear{c}); }
  static ForcingLaw tanh_antidamping(double q) { return ForcingLaw(forcing::TanhAntidamping{q}); }
  static ForcingLaw monotone_damping(double k) { return ForcingLaw(forcing::MonotoneDamping{k}); }
  static ForcingLaw piecewise_linear(double q_inner, double q_outer, double knee) {
    return ForcingLaw(forcing::PiecewiseLinear{q_inner, q_outer, knee});
  }

  double operator()(double s) const;

  const Params& params() const noexcept { return params_; }
  std::string kind_name() const;

 private:
  Params params_;
};

inline double eval_g(const FeedbackLaw& law, double s) { return law(s); }
inline double eval_F(const ForcingLaw& law, double s) { return law(s); }

/// Sector data alpha1 |s| <= |g(s)| <= alpha2 |s| for |s| >= S, plus
/// sup_{|s| <= S} |g(s)|^2.
struct SectorData {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double S = 0.0;
  double sup_g_sq_on_ball = 0.0;
  /// false for analytic built-ins; true when obtained by sampling.
  bool estimated = false;
};

/// Throws NoValidSector when no lower sector bound can hold for large |s|
/// (saturation, zero gain) or no upper bound exists (cubic growth).
SectorData sector_params(const FeedbackLaw& law);

struct LipschitzData {
  std::optional<double> q_global;
  double q_local = 0.0;
  /// Radius of the neighbourhood of 0 on which q_local applies.
  double neighborhood_radius = std::numeric_limits<double>::infinity();
};

LipschitzData lipschitz_constant(const ForcingLaw& law);

/// True when F is nonincreasing on all of R (the monotone case).
bool is_nonincreasing(const ForcingLaw& law);

/// Sampled checks used to validate laws at construction and in tests.
struct SampleCheck {
  bool passed = true;
  double worst = 0.0;  ///< most negative increment, or largest quotient excess
  double at = 0.0;
};

/// 10^4 points on [-100, 100]: g(s_{k+1}) - g(s_k) >= -1e-12.
SampleCheck check_monotone_sampled(const FeedbackLaw& law);
/// Sampled difference quotients |F(s1) - F(s2)| / |s1 - s2| <= q (1 + 1e-9).
SampleCheck check_lipschitz_sampled(const ForcingLaw& law, double q);

}  // namespace waveguard
