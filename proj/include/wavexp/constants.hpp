#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wavexp/coeff_cov.hpp"
#include "wavexp/scheme.hpp"
#include "wavexp/spectral.hpp"
#include "wavexp/wavelet.hpp"

namespace wavexp {

/// Every named constant of the modulus-of-continuity bound chain.
struct ConstantsLedger {
  // parameters
  double alpha = 0.0;
  double gamma = 0.0;
  double beta = 0.0;   // 1 - gamma
  double delta = 0.0;  // midpoint of (0, 2 - 1/beta)
  double T = 0.0;

  // wavelet-side integrals (psi then phi)
  double c0 = 0.0, c1 = 0.0, c2 = 0.0, c3 = 0.0;
  double c_phi0 = 0.0, c_phi1 = 0.0, c_phi2 = 0.0, c_phi3 = 0.0;

  // frequency-domain suprema
  double c_phi = 0.0, c_phi_d1 = 0.0, c_psi_d1 = 0.0, c_psi_d2 = 0.0;

  // spectral constants
  double a_psi = 0.0, a1_psi = 0.0, a_phi = 0.0, a1_phi = 0.0;

  // geometric constants
  double c_alpha = 0.0;
  double K = 0.0, K_phi = 0.0;
  double Q_direct = 0.0;  // truncated double sum (lower bound, increasing)
  double Q = 0.0;         // convergent split majorant, the value used in B

  // tail sums
  double q = 0.0, q1 = 0.0, q2 = 0.0;
  double q_phi = 0.0, q_phi1 = 0.0, q_phi2 = 0.0;

  // aggregates
  double B1 = 0.0, B2 = 0.0, B = 0.0;
};

/// Populates the full ledger: wavelet integrals by finite-range quadrature,
/// spectral integrals with doubling tails, c_alpha by golden-section
/// maximization, series by partial sums with analytic remainder < 1e-12.
ConstantsLedger compute_constants(const WaveletPair& pair,
                                  const SpectralModel& model, double alpha,
                                  double gamma, double T);

struct ModulusCheckEntry {
  int n = 0;
  int k = 0;  // uniform shift bound of the scheme (k0 = kj = k)
  double t = 0.0;
  double s = 0.0;
  double lhs = 0.0;    // (E|X_n(t) - X_n(s)|^2)^{1/2}
  double bound = 0.0;  // B * (ln(e^alpha + 1/|t-s|))^{-alpha}
  double margin = 0.0;
};

struct ModulusReport {
  std::vector<ModulusCheckEntry> entries;
  bool pass = true;
  double min_margin = 0.0;
  double empirical_envelope = 0.0;  // max over pairs of lhs / log-factor
};

/// Deterministic verification of the root-mean-square increment bound on
/// every (scheme, pair) combination.
ModulusReport verify_modulus_bound(const CovEngine& engine,
                                   const std::vector<TruncationScheme>& schemes,
                                   const ConstantsLedger& ledger,
                                   const std::vector<std::pair<double, double>>& pairs);

struct InequalityReport {
  size_t samples = 0;
  size_t violations = 0;
  double max_ratio = 0.0;  // max over samples of lhs / rhs, per family
  double max_ratio_exp = 0.0;
  double max_ratio_log_split = 0.0;
  double max_ratio_h_bound = 0.0;
  bool pass = true;
};

/// Randomized check of the imported elementary inequalities: the complex
/// exponential increment bound, the dyadic log-splitting bound, and
/// h <= c_alpha * (ln(e^alpha + 1/h))^{-alpha}.
InequalityReport verify_elementary_inequalities(double alpha, double T,
                                                size_t samples, uint64_t seed);

}  // namespace wavexp
