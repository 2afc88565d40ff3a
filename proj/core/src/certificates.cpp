#include "waveguard/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include <Eigen/Eigenvalues>

#include "dense_forms.hpp"
#include "waveguard/errors.hpp"

namespace waveguard {

namespace {

// Slack for conditions that hold with equality at the chosen epsilon.
constexpr double kRoundoff = 1e-12;

HypothesisCheck at_most(std::string name, double value, double bound) {
  return {std::move(name), value, bound, value <= bound + kRoundoff * std::max(1.0, std::abs(bound))};
}

HypothesisCheck greater(std::string name, double value, double bound) {
  return {std::move(name), value, bound, value > bound};
}

}  // namespace

MonotoneCertificate build_monotone_certificate(const SectorData& sector, const WeightRho& rho) {
  if (!(sector.alpha1 > 0.0)) {
    throw HypothesisViolated("cond-sect", "alpha1 must be positive, got " + std::to_string(sector.alpha1));
  }
  if (!(sector.alpha2 >= sector.alpha1)) {
    throw HypothesisViolated("cond-sect", "alpha2 must be >= alpha1");
  }
  if (!(sector.S >= 0.0) || !(sector.sup_g_sq_on_ball >= 0.0)) {
    throw HypothesisViolated("cond-sect", "S and sup |g|^2 on the ball must be >= 0");
  }

  MonotoneCertificate c{.rho = rho, .sector = sector};
  c.C1 = std::min(rho.rho0(), rho.slope());
  c.C2 = 2.0 * rho.rhoL();
  c.C3 = rho.rhoL();
  c.tau = (2.0 * c.C2 + 1.0) / c.C1;
  c.C1_step2 = c.C2 + c.C3 * (1.0 / sector.alpha1 + sector.alpha2);
  c.C2_tau = c.tau * c.C3 * std::max(sector.S * sector.S, sector.sup_g_sq_on_ball);
  const double shrink = 1.0 + 1.0 / c.C1_step2;
  c.r = 1.0 / shrink;
  c.p = c.C2_tau / shrink;
  c.E_S = c.p / (1.0 - c.r);
  c.alpha = std::log(shrink);
  c.mu = c.alpha / c.tau;
  c.M = shrink;

  c.checklist = {
      greater("alpha1 > 0", sector.alpha1, 0.0),
      at_most("alpha1 <= alpha2", sector.alpha1, sector.alpha2),
      greater("rho(0) > 0", rho.rho0(), 0.0),
      greater("rho' > 0", rho.slope(), 0.0),
      {"tau C1 >= 2 C2 + 1", c.tau * c.C1, 2.0 * c.C2 + 1.0,
       c.tau * c.C1 >= (2.0 * c.C2 + 1.0) * (1.0 - kRoundoff)},
      {"0 < r < 1", c.r, 1.0, c.r > 0.0 && c.r < 1.0},
  };
  return c;
}

MonotoneCertificate search_monotone_certificate(const SectorData& sector, double length) {
  std::optional<MonotoneCertificate> best;
  for (double rho0 : {0.5, 1.0, 2.0}) {
    for (double ratio : {1.5, 2.0, 4.0}) {
      auto c = build_monotone_certificate(sector, WeightRho(rho0, ratio * rho0, length));
      if (!best || c.mu > best->mu || (c.mu == best->mu && c.E_S < best->E_S)) best = std::move(c);
    }
  }
  return *best;
}

AntiDampingCertificate build_antidamping_certificate(double q, const SectorData& sector, double length) {
  if (!(q >= 0.0) || !std::isfinite(q)) throw ContractViolation("Lipschitz constant q must be >= 0");
  if (!(length > 0.0)) throw ContractViolation("length must be positive");
  if (q >= 0.5) throw HypothesisViolated("q ∈ (0, 1/2)", "q = " + std::to_string(q));
  if (sector.S > 0.0) {
    throw HypothesisViolated("global sector required", "sector holds only for |s| >= " + std::to_string(sector.S));
  }
  const double a1 = sector.alpha1;
  const double a2 = sector.alpha2;
  const double ratio = a1 / (1.0 + a2 * a2);
  if (!(ratio > q)) {
    throw HypothesisViolated("cond-g: α1/(1+α2²) > q",
                             "alpha1/(1+alpha2^2) = " + std::to_string(ratio) + ", q = " + std::to_string(q));
  }

  const double eps = std::min((a1 - q * (1.0 + a2 * a2)) / (2.0 + a2 * a2), (1.0 - 2.0 * q) / 3.0);
  AntiDampingCertificate c{
      .q = q, .alpha1 = a1, .alpha2 = a2, .epsilon = eps, .rho = WeightRho(2.0 * q + eps, 2.0 * q + 2.0 * eps, length)};
  c.M1 = 1.0 - c.rho.sup();
  c.M2 = 1.0 + c.rho.sup();
  c.mu = std::min(eps, eps / (2.0 * length));
  c.M_prefactor = c.M2 / c.M1;

  c.checklist = {
      {"0 <= q < 1/2", q, 0.5, q < 0.5},
      greater("alpha1/(1+alpha2^2) > q", ratio, q),
      at_most("S == 0", sector.S, 0.0),
      at_most("(q+eps)(1+alpha2^2) <= alpha1 - eps", (q + eps) * (1.0 + a2 * a2), a1 - eps),
      at_most("q + eps <= (1-eps)/2", q + eps, (1.0 - eps) / 2.0),
      at_most("sup rho <= 1 - eps", c.rho.sup(), 1.0 - eps),
      greater("M1 > 0", c.M1, 0.0),
  };
  return c;
}

DistanceLemmaConstant distance_lemma_constant(const Grid& grid) {
  if (grid.n_cells() > kMaxDistanceLemmaCells) {
    throw ContractViolation("distance_lemma_constant supports n_cells <= " + std::to_string(kMaxDistanceLemmaCells));
  }
  // With v = 0 the ratio energy / ||X||_H^2 is the Rayleigh quotient of
  // (a / 2, mass + a); the v-part alone gives exactly 1/2. Constants span the
  // kernel, so the restricted minimum is the second eigenvalue.
  const Eigen::MatrixXd a = detail::stiffness_matrix(grid);
  Eigen::MatrixXd gram = a;
  gram.diagonal() += detail::pivot_mass(grid);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * a, gram);
  if (eig.info() != Eigen::Success) throw NumericFailure("distance lemma: generalized eigensolver failed");

  const double lambda = eig.eigenvalues()(1);
  if (!(lambda > 0.0)) throw NumericFailure("distance lemma: restricted energy form is not coercive");

  DistanceLemmaConstant out;
  out.M1_numeric = std::min(0.5, lambda);
  out.K = 1.0 / out.M1_numeric;
  const Eigen::VectorXd w = eig.eigenvectors().col(1);
  out.minimizer_u.assign(w.data(), w.data() + w.size());
  return out;
}

double attractivity_constant(double K, double M) {
  if (!(K > 0.0) || !(M > 0.0)) throw ContractViolation("attractivity constant needs K > 0 and M > 0");
  return K * M;
}

double attractivity_constant(const MonotoneCertificate& cert, const DistanceLemmaConstant& lemma) {
  return attractivity_constant(lemma.K, cert.M);
}

double attractivity_constant(const AntiDampingCertificate& cert, const DistanceLemmaConstant& lemma) {
  return attractivity_constant(lemma.K, cert.M_prefactor);
}

}  // namespace waveguard
