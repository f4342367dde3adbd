#pragma once

#include <functional>
#include <string>

#include "wavexp/report.hpp"

namespace wavexp {

/// Stationary covariance R(tau) with spectral density Rhat(z) and its
/// derivative. tail_cutoff(rel) returns Z such that the spectral mass outside
/// [-Z, Z] is below rel times the total; it is used to truncate integrals.
struct SpectralModel {
  std::string kernel;
  double variance = 0.0;  // R(0)
  std::function<double(double)> covariance;
  std::function<double(double)> density;
  std::function<double(double)> density_d1;
  std::function<double(double)> tail_cutoff;
};

enum class SpectralMember { R, Rhat, RhatD1 };

/// R(tau) = variance * exp(-tau^2 / (2 l^2)).
SpectralModel make_squared_exponential(double variance, double length);

/// Standard Matern covariance; nu >= 5/2 so that the fourth spectral moments
/// required by the process conditions are finite.
SpectralModel make_matern(double nu, double variance, double length);

/// Identically-zero process (degenerate but valid spectral density).
SpectralModel make_zero();

double eval_spectral(const SpectralModel& model, SpectralMember member,
                     double arg);

/// Certifies boundedness of Rhat and finiteness of the integrals
/// int |Rhat'|, int |Rhat| |z|^4, int |Rhat'| |z|^4. Divergence is decided
/// by a doubling-ratio test: a partial integral whose increments fail to
/// shrink (ratio >= 0.9) under doubling of z_max is declared FAIL.
ConditionReport check_spectral_conditions(const SpectralModel& model,
                                          double z_max, double tol);

}  // namespace wavexp
