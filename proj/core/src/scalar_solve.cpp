#include "waveguard/scalar_solve.hpp"

#include <cmath>
#include <limits>

namespace waveguard {

namespace {

bool collapsed(double lo, double hi) {
  return std::nextafter(lo, std::numeric_limits<double>::infinity()) >= hi;
}

}  // namespace

ScalarRoot solve_increasing(const std::function<double(double)>& f, const std::function<double(double)>& slope,
                            double x0, double min_slope, double tol, int max_iter) {
  ScalarRoot out;
  double f0 = f(x0);
  if (!std::isfinite(f0)) return out;
  out.x = x0;
  out.residual = f0;
  if (std::abs(f0) <= tol) {
    out.converged = true;
    return out;
  }

  double lo = x0;
  double hi = x0;
  double f_lo = f0;
  double f_hi = f0;
  if (min_slope > 0.0) {
    double other = x0 - f0 / min_slope;
    double f_other = f(other);
    ++out.iterations;
    // When f is affine with slope min_slope, rounding can leave `other` on
    // the same side as x0; push it further out until the sign flips.
    double push = std::max(std::abs(other - x0), std::abs(other) * 1e-15) * 1e-8 + 1e-300;
    while (std::abs(f_other) > tol && (f_other < 0.0) == (f0 < 0.0)) {
      if (++out.iterations > max_iter || !std::isfinite(f_other)) return out;
      other += f0 < 0.0 ? push : -push;
      f_other = f(other);
      push *= 4.0;
    }
    if (std::abs(f_other) <= tol) return ScalarRoot{other, f_other, out.iterations, true};
    if (f0 < 0.0) {
      hi = other;
      f_hi = f_other;
    } else {
      lo = other;
      f_lo = f_other;
    }
  } else {
    double step = std::max(std::abs(x0), 1.0) * 1e-3;
    const double direction = f0 < 0.0 ? 1.0 : -1.0;
    double probe = x0;
    double f_probe = f0;
    while ((f_probe < 0.0) == (f0 < 0.0)) {
      if (++out.iterations > max_iter) return out;
      probe = x0 + direction * step;
      f_probe = f(probe);
      step *= 2.0;
    }
    if (direction > 0.0) {
      hi = probe;
      f_hi = f_probe;
    } else {
      lo = probe;
      f_lo = f_probe;
    }
    if (std::abs(f_probe) <= tol) return ScalarRoot{probe, f_probe, out.iterations, true};
  }
  if (!(f_lo <= 0.0 && f_hi >= 0.0)) return out;

  // Start from whichever end is closer to the root.
  double x = std::abs(f_lo) < std::abs(f_hi) ? lo : hi;
  double fx = std::abs(f_lo) < std::abs(f_hi) ? f_lo : f_hi;
  bool force_bisect = false;
  while (out.iterations < max_iter) {
    ++out.iterations;
    double next = 0.5 * (lo + hi);
    if (slope && !force_bisect) {
      const double d = slope(x);
      if (d > 0.0) {
        const double newton = x - fx / d;
        if (newton > lo && newton < hi) next = newton;
      }
    }
    const double previous = std::abs(fx);
    x = next;
    fx = f(x);
    out.x = x;
    out.residual = fx;
    if (std::abs(fx) <= tol) {
      out.converged = true;
      return out;
    }
    (fx < 0.0 ? lo : hi) = x;
    if (collapsed(lo, hi)) {
      out.converged = true;
      return out;
    }
    // Newton that fails to halve the residual yields one bisection step.
    force_bisect = !force_bisect && std::abs(fx) > 0.5 * previous;
  }
  return out;
}

}  // namespace waveguard
