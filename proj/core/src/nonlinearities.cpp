#include "waveguard/nonlinearities.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "waveguard/errors.hpp"

namespace waveguard {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double sign(double s) { return (s > 0.0) - (s < 0.0); }

void require(bool ok, const std::string& message) {
  if (!ok) throw ContractViolation(message);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

double eval_table(const feedback::Tabulated& t, double s) {
  const auto& xs = t.s;
  const auto& ys = t.g;
  std::size_t hi;
  if (s <= xs.front()) {
    hi = 1;
  } else if (s >= xs.back()) {
    hi = xs.size() - 1;
  } else {
    hi = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), s) - xs.begin());
  }
  const std::size_t lo = hi - 1;
  const double slope = (ys[hi] - ys[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + slope * (s - xs[lo]);
}

double table_slope(const feedback::Tabulated& t, double s) {
  std::size_t hi;
  if (s < t.s.front()) {
    hi = 1;
  } else if (s >= t.s.back()) {
    hi = t.s.size() - 1;
  } else {
    hi = static_cast<std::size_t>(std::upper_bound(t.s.begin(), t.s.end(), s) - t.s.begin());
  }
  return (t.g[hi] - t.g[hi - 1]) / (t.s[hi] - t.s[hi - 1]);
}

void validate(const feedback::Tabulated& t) {
  require(t.s.size() == t.g.size() && t.s.size() >= 2, "tabulated feedback needs >= 2 (s, g) pairs of equal length");
  for (std::size_t i = 0; i < t.s.size(); ++i) {
    require(std::isfinite(t.s[i]) && std::isfinite(t.g[i]), "tabulated feedback entries must be finite");
    if (i > 0) {
      require(t.s[i] > t.s[i - 1], "tabulated feedback abscissae must be strictly increasing");
      require(t.g[i] >= t.g[i - 1], "tabulated feedback must be nondecreasing");
    }
  }
  require(std::abs(eval_table(t, 0.0)) <= 1e-12, "tabulated feedback must satisfy g(0) = 0");
}

SectorData sampled_sector(const FeedbackLaw& law, const feedback::Tabulated& t) {
  const std::size_t n = t.s.size();
  const double slope_left = (t.g[1] - t.g[0]) / (t.s[1] - t.s[0]);
  const double slope_right = (t.g[n - 1] - t.g[n - 2]) / (t.s[n - 1] - t.s[n - 2]);
  if (!(slope_left > 0.0) || !(slope_right > 0.0)) {
    throw NoValidSector("tabulated feedback is flat at infinity; lower sector bound fails for large |s|");
  }

  constexpr int kSamples = 10000;
  const double reach = 10.0 * std::max({std::abs(t.s.front()), std::abs(t.s.back()), 1.0});
  std::vector<double> samples;
  samples.reserve(kSamples + 1);
  for (int k = 0; k <= kSamples; ++k) {
    const double s = -reach + 2.0 * reach * k / kSamples;
    if (s != 0.0) samples.push_back(s);
  }
  const auto ratio = [&](double s) { return std::abs(law(s)) / std::abs(s); };

  SectorData out;
  out.estimated = true;
  out.alpha2 = std::max(slope_left, slope_right);
  for (double s : samples) out.alpha2 = std::max(out.alpha2, ratio(s));

  // Lower bound: half the smaller asymptotic slope, valid beyond the last
  // sample that falls below it.
  const double target = 0.5 * std::min(slope_left, slope_right);
  double last_bad = 0.0;
  for (double s : samples) {
    if (ratio(s) < target) last_bad = std::max(last_bad, std::abs(s));
  }
  const double step = 2.0 * reach / kSamples;
  out.S = last_bad > 0.0 ? last_bad + step : 0.0;
  out.alpha1 = std::min(slope_left, slope_right);
  for (double s : samples) {
    if (std::abs(s) >= out.S) out.alpha1 = std::min(out.alpha1, ratio(s));
  }
  if (!(out.alpha1 > 0.0)) throw NoValidSector("sampled lower sector constant is not positive");

  if (out.S > 0.0) {
    for (int k = 0; k <= kSamples; ++k) {
      const double s = -out.S + 2.0 * out.S * k / kSamples;
      const double g = law(s);
      out.sup_g_sq_on_ball = std::max(out.sup_g_sq_on_ball, g * g);
    }
  }
  return out;
}

}  // namespace

FeedbackLaw::FeedbackLaw(Params params) : params_(std::move(params)) {
  std::visit(Overloaded{
                 [](const feedback::LinearGain& p) { require(finite_nonneg(p.k), "linear_gain: k must be >= 0"); },
                 [](const feedback::Deadzone& p) { require(finite_nonneg(p.d), "deadzone: d must be >= 0"); },
                 [](const feedback::Saturation& p) {
                   require(finite_nonneg(p.k), "saturation: k must be >= 0");
                   require(std::isfinite(p.cap) && p.cap > 0.0, "saturation: cap must be > 0");
                 },
                 [](const feedback::PowerSector& p) {
                   require(finite_nonneg(p.a) && finite_nonneg(p.b),
                           "power_sector: a, b must be >= 0 for a nondecreasing law");
                 },
                 [](const feedback::Tabulated& p) { validate(p); },
             },
             params_);
}

double FeedbackLaw::operator()(double s) const {
  return std::visit(Overloaded{
                        [s](const feedback::LinearGain& p) { return p.k * s; },
                        [s](const feedback::Deadzone& p) { return sign(s) * std::max(std::abs(s) - p.d, 0.0); },
                        [s](const feedback::Saturation& p) { return std::clamp(p.k * s, -p.cap, p.cap); },
                        [s](const feedback::PowerSector& p) { return p.a * s + p.b * s * s * s; },
                        [s](const feedback::Tabulated& p) { return eval_table(p, s); },
                    },
                    params_);
}

double FeedbackLaw::slope(double s) const {
  return std::visit(Overloaded{
                        [](const feedback::LinearGain& p) { return p.k; },
                        [s](const feedback::Deadzone& p) { return std::abs(s) > p.d ? 1.0 : 0.0; },
                        [s](const feedback::Saturation& p) { return std::abs(p.k * s) < p.cap ? p.k : 0.0; },
                        [s](const feedback::PowerSector& p) { return p.a + 3.0 * p.b * s * s; },
                        [s](const feedback::Tabulated& p) { return table_slope(p, s); },
                    },
                    params_);
}

std::string FeedbackLaw::kind_name() const {
  return std::visit(Overloaded{
                        [](const feedback::LinearGain&) { return std::string("linear_gain"); },
                        [](const feedback::Deadzone&) { return std::string("deadzone"); },
                        [](const feedback::Saturation&) { return std::string("saturation"); },
                        [](const feedback::PowerSector&) { return std::string("power_sector"); },
                        [](const feedback::Tabulated&) { return std::string("tabulated"); },
                    },
                    params_);
}

ForcingLaw::ForcingLaw(Params params) : params_(std::move(params)) {
  std::visit(Overloaded{
                 [](const forcing::Zero&) {},
                 [](const forcing::Linear& p) { require(std::isfinite(p.c), "linear: c must be finite"); },
                 [](const forcing::TanhAntidamping& p) {
                   require(finite_nonneg(p.q), "tanh_antidamping: q must be >= 0");
                 },
                 [](const forcing::MonotoneDamping& p) {
                   require(finite_nonneg(p.k), "monotone_damping: k must be >= 0");
                 },
                 [](const forcing::PiecewiseLinear& p) {
                   require(std::isfinite(p.q_inner) && std::isfinite(p.q_outer), "piecewise_linear: slopes must be finite");
                   require(std::isfinite(p.knee) && p.knee > 0.0, "piecewise_linear: knee must be > 0");
                 },
             },
             params_);
}

double ForcingLaw::operator()(double s) const {
  return std::visit(Overloaded{
                        [](const forcing::Zero&) { return 0.0; },
                        [s](const forcing::Linear& p) { return p.c * s; },
                        [s](const forcing::TanhAntidamping& p) { return p.q * std::tanh(s); },
                        [s](const forcing::MonotoneDamping& p) { return -p.k * std::tanh(s); },
                        [s](const forcing::PiecewiseLinear& p) {
                          const double a = std::abs(s);
                          if (a <= p.knee) return p.q_inner * s;
                          return sign(s) * (p.q_inner * p.knee + p.q_outer * (a - p.knee));
                        },
                    },
                    params_);
}

std::string ForcingLaw::kind_name() const {
  return std::visit(Overloaded{
                        [](const forcing::Zero&) { return std::string("zero"); },
                        [](const forcing::Linear&) { return std::string("linear"); },
                        [](const forcing::TanhAntidamping&) { return std::string("tanh_antidamping"); },
                        [](const forcing::MonotoneDamping&) { return std::string("monotone_damping"); },
                        [](const forcing::PiecewiseLinear&) { return std::string("piecewise_linear"); },
                    },
                    params_);
}

SectorData sector_params(const FeedbackLaw& law) {
  return std::visit(
      Overloaded{
          [](const feedback::LinearGain& p) {
            if (!(p.k > 0.0)) throw NoValidSector("linear_gain(0) has no positive lower sector constant");
            return SectorData{p.k, p.k, 0.0, 0.0, false};
          },
          [](const feedback::Deadzone& p) {
            if (p.d == 0.0) return SectorData{1.0, 1.0, 0.0, 0.0, false};
            // |s| - d >= |s|/2 once |s| >= 2d; the largest |g| on the ball is d.
            return SectorData{0.5, 1.0, 2.0 * p.d, p.d * p.d, false};
          },
          [](const feedback::Saturation&) -> SectorData {
            throw NoValidSector("saturation: |g| is capped, so alpha1 |s| <= |g(s)| fails for large |s|");
          },
          [](const feedback::PowerSector& p) -> SectorData {
            if (p.b > 0.0) throw NoValidSector("power_sector: cubic growth violates |g(s)| <= alpha2 |s|");
            if (!(p.a > 0.0)) throw NoValidSector("power_sector with a = b = 0 is identically zero");
            return SectorData{p.a, p.a, 0.0, 0.0, false};
          },
          [&law](const feedback::Tabulated& p) { return sampled_sector(law, p); },
      },
      law.params());
}

LipschitzData lipschitz_constant(const ForcingLaw& law) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  return std::visit(Overloaded{
                        [](const forcing::Zero&) { return LipschitzData{0.0, 0.0, kInf}; },
                        [](const forcing::Linear& p) { return LipschitzData{std::abs(p.c), std::abs(p.c), kInf}; },
                        [](const forcing::TanhAntidamping& p) { return LipschitzData{p.q, p.q, kInf}; },
                        [](const forcing::MonotoneDamping& p) { return LipschitzData{p.k, p.k, kInf}; },
                        [](const forcing::PiecewiseLinear& p) {
                          const double inner = std::abs(p.q_inner);
                          return LipschitzData{std::max(inner, std::abs(p.q_outer)), inner, p.knee};
                        },
                    },
                    law.params());
}

bool is_nonincreasing(const ForcingLaw& law) {
  return std::visit(Overloaded{
                        [](const forcing::Zero&) { return true; },
                        [](const forcing::Linear& p) { return p.c <= 0.0; },
                        [](const forcing::TanhAntidamping& p) { return p.q <= 0.0; },
                        [](const forcing::MonotoneDamping&) { return true; },
                        [](const forcing::PiecewiseLinear& p) { return p.q_inner <= 0.0 && p.q_outer <= 0.0; },
                    },
                    law.params());
}

SampleCheck check_monotone_sampled(const FeedbackLaw& law) {
  constexpr int kSamples = 10000;
  SampleCheck out;
  double prev_s = -100.0;
  double prev_g = law(prev_s);
  for (int k = 1; k < kSamples; ++k) {
    const double s = -100.0 + 200.0 * k / (kSamples - 1);
    const double g = law(s);
    const double inc = g - prev_g;
    if (inc < out.worst) {
      out.worst = inc;
      out.at = prev_s;
    }
    prev_s = s;
    prev_g = g;
  }
  out.passed = out.worst >= -1e-12;
  return out;
}

SampleCheck check_lipschitz_sampled(const ForcingLaw& law, double q) {
  SampleCheck out;
  const auto scan = [&](double lo, double hi, int n) {
    double prev_s = lo;
    double prev_f = law(lo);
    for (int k = 1; k < n; ++k) {
      const double s = lo + (hi - lo) * k / (n - 1);
      const double f = law(s);
      const double excess = std::abs(f - prev_f) - q * (1.0 + 1e-9) * (s - prev_s);
      if (excess > out.worst) {
        out.worst = excess;
        out.at = prev_s;
      }
      prev_s = s;
      prev_f = f;
    }
  };
  scan(-100.0, 100.0, 10000);
  scan(-2.0, 2.0, 10000);
  out.passed = out.worst <= 1e-9;
  return out;
}

}  // namespace waveguard
