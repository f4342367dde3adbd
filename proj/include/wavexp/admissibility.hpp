#pragma once

#include "wavexp/report.hpp"
#include "wavexp/wavelet.hpp"

namespace wavexp {

/// Modulus-of-continuity family for the uniform-convergence criterion:
///   Log:   sigma(h) = c * (ln(e^alpha + 1/h))^{-alpha}
///   Power: sigma(h) = c * h^gamma
struct ModulusSpec {
  enum class Family { Log, Power };
  Family family = Family::Log;
  double c = 1.0;
  double exponent = 0.75;  // alpha for Log, gamma for Power
  double horizon = 10.0;   // domain (0, horizon]

  double sigma(double h) const;
  /// sigma(exp(-x)), evaluated stably for very large x.
  double sigma_from_neglog(double x) const;
};

/// h with sigma(h) = u, bisection on (0, horizon].
double sigma_inverse(const ModulusSpec& spec, double u);

/// -ln(sigma^{-1}(u)); usable far below the underflow threshold of
/// sigma_inverse itself.
double neg_log_sigma_inverse(const ModulusSpec& spec, double u);

enum class IntegralVerdict { Converges, Diverges };

struct EntropyResult {
  double value = 0.0;
  IntegralVerdict verdict = IntegralVerdict::Converges;
  std::vector<double> decade_contributions;
};

/// int_0^eps sqrt(-ln sigma^{-1}(u)) du by log-spaced decades down to
/// eps * 1e-12; DIVERGES when per-decade contributions fail to decay
/// (ratio >= 0.999 across the last five decades).
EntropyResult entropy_integral(const ModulusSpec& spec, double eps,
                               int panels = 32);

struct WaveletGridSpec {
  int coarse = 4096;
  int fine = 8192;
};

/// Verdicts for the four wavelet-side hypotheses: smoothness/vanishing at 0,
/// the three suprema, decay at infinity, and the log-weighted fractional
/// integrals. Diagnostics carry the computed suprema and integrals.
ConditionReport check_wavelet_conditions(const WaveletPair& pair, double gamma,
                                         double alpha,
                                         const WaveletGridSpec& grid = {});

}  // namespace wavexp
