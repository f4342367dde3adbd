#pragma once

#include <cstdint>
#include <vector>

#include "wavexp/coeff_cov.hpp"
#include "wavexp/scheme.hpp"
#include "wavexp/wavelet.hpp"

namespace wavexp {

struct PathSample {
  uint64_t seed = 0;
  std::vector<double> grid;
  std::vector<double> process;         // X(t_i)
  std::vector<double> coefficients;    // scheme order
  std::vector<double> reconstruction;  // X_n(t_i)
};

/// Draws `replicates` joint Gaussian vectors in the covariance's index order.
/// Replicate r is a pure function of (seed, r).
std::vector<std::vector<double>> sample_joint(const JointCovariance& cov,
                                              uint64_t seed,
                                              size_t replicates);

/// X_n(t) = sum of coefficients times basis functions, in scheme order.
std::vector<double> reconstruct(const WaveletPair& pair,
                                const TruncationScheme& scheme,
                                const std::vector<double>& coefficients,
                                const std::vector<double>& grid);

/// Deterministic E|X(t) - X_n(t)|^2 from exact covariances. Slightly negative
/// quadrature residue (above -1e-8 * max(1, R(0))) is clipped to 0; anything
/// lower throws.
double pointwise_mse(const CovEngine& engine, const TruncationScheme& scheme,
                     double t);

struct ExceedanceEstimate {
  double p_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  size_t replicates = 0;
  uint64_t seed = 0;
  double p_hat_doubled_grid = 0.0;  // sensitivity: same seed, 2x grid density
};

/// Wilson 95% confidence interval for a binomial proportion.
void wilson_interval(size_t successes, size_t trials, double& lo, double& hi);

/// P{max over grid |X(t) - X_n(t)| > eps} by exact joint Gaussian sampling.
/// The grid must be uniform on [grid.front(), grid.back()]; the doubled grid
/// sensitivity run shares the seed.
ExceedanceEstimate sup_exceedance(const CovEngine& engine,
                                  const TruncationScheme& scheme,
                                  const std::vector<double>& grid, double eps,
                                  size_t replicates, uint64_t seed);

/// Assembles PathSample records (process + coefficients + reconstruction)
/// from joint draws; used by demos and the reconstruction invariant tests.
std::vector<PathSample> sample_paths(const CovEngine& engine,
                                     const TruncationScheme& scheme,
                                     const std::vector<double>& grid,
                                     uint64_t seed, size_t replicates);

std::vector<double> uniform_grid(double lo, double hi, size_t points);

}  // namespace wavexp
