#pragma once

#include <functional>

namespace waveguard {

struct ScalarRoot {
  double x = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Root of a strictly increasing scalar function by Newton's method
/// safeguarded with bisection.
///
/// When min_slope > 0 (a known lower bound on f'), the bracket comes directly
/// from x0 - f(x0) / min_slope; otherwise it is grown geometrically from x0.
/// `slope` may be empty, in which case pure bisection is used inside the
/// bracket. Stops when |f| <= tol, or when the bracket has collapsed to
/// adjacent doubles (the residual is then the best representable one).
ScalarRoot solve_increasing(const std::function<double(double)>& f, const std::function<double(double)>& slope,
                            double x0, double min_slope, double tol, int max_iter);

}  // namespace waveguard
