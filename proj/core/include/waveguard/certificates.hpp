#pragma once

// Closed-form constants of the two exponential-stability results and of the
// distance lemma.
//
// Monotone case (F nonincreasing, g in a sector for |s| >= S):
//   {E(t) - E_S}^+ <= M exp(-mu t) {E(0) - E_S}^+.
// Anti-damping case (F globally q-Lipschitz, g in a global sector):
//   E(t) <= (M2 / M1) exp(-mu t) E(0).

#include <string>
#include <vector>

#include "waveguard/grid.hpp"
#include "waveguard/nonlinearities.hpp"
#include "waveguard/state_space.hpp"
#include "waveguard/weight.hpp"

namespace waveguard {

/// One line of the hypothesis checklist: `value` is compared against
/// `bound` with the relation spelled out in `name`.
struct HypothesisCheck {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool passed = false;
};

struct MonotoneCertificate {
  WeightRho rho;
  SectorData sector;
  double C1 = 0.0;
  double C2 = 0.0;
  double C3 = 0.0;
  double tau = 0.0;
  double C1_step2 = 0.0;
  double C2_tau = 0.0;
  double r = 0.0;
  double p = 0.0;
  double E_S = 0.0;
  double alpha = 0.0;
  double mu = 0.0;
  double M = 0.0;
  std::vector<HypothesisCheck> checklist{};
};

/// Throws HypothesisViolated("cond-sect", ...) unless 0 < alpha1 <= alpha2
/// and S >= 0.
MonotoneCertificate build_monotone_certificate(const SectorData& sector, const WeightRho& rho);

/// Best certificate over rho0 in {0.5, 1, 2}, rhoL / rho0 in {1.5, 2, 4}:
/// largest mu, ties broken by smaller E_S.
MonotoneCertificate search_monotone_certificate(const SectorData& sector, double length);

struct AntiDampingCertificate {
  double q = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double epsilon = 0.0;
  WeightRho rho;
  double M1 = 0.0;
  double M2 = 0.0;
  double mu = 0.0;
  double M_prefactor = 0.0;
  std::vector<HypothesisCheck> checklist{};
};

/// Uses the largest feasible epsilon. Throws HypothesisViolated with
/// condition "q ∈ (0, 1/2)", "cond-g: α1/(1+α2²) > q" or
/// "global sector required"; ContractViolation for q < 0 or length <= 0.
AntiDampingCertificate build_antidamping_certificate(double q, const SectorData& sector, double length);

/// Coercivity constant of the energy on the complement of the constants:
/// M1 ||X||_H^2 <= energy(X) for X H-orthogonal to [1, 0].
struct DistanceLemmaConstant {
  double M1_numeric = 0.0;
  double K = 0.0;
  /// Displacement part of a minimiser (v = 0), H-orthogonal to constants.
  std::vector<double> minimizer_u;
};

inline constexpr int kMaxDistanceLemmaCells = 512;

/// Dense generalized eigenproblem; throws ContractViolation above
/// kMaxDistanceLemmaCells and NumericFailure if the eigensolver fails.
DistanceLemmaConstant distance_lemma_constant(const Grid& grid);

/// M' = K * M with M the decay prefactor of the certificate.
double attractivity_constant(const MonotoneCertificate& cert, const DistanceLemmaConstant& lemma);
double attractivity_constant(const AntiDampingCertificate& cert, const DistanceLemmaConstant& lemma);
double attractivity_constant(double K, double M);

}  // namespace waveguard
