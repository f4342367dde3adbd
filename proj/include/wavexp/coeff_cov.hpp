#pragma once

#include <Eigen/Dense>
#include <string>
#include <map>
#include <unordered_map>
#include <vector>

#include "wavexp/scheme.hpp"
#include "wavexp/spectral.hpp"
#include "wavexp/wavelet.hpp"

namespace wavexp {

/// Frequency-quadrature controls for the Parseval covariance integrals.
struct QuadSpec {
  double panel_width = M_PI / 8.0;
  int nodes = 32;
  double rel_tol = 1e-8;
  double tail_rel = 1e-16;  // spectral tail clip for the integration range
};

/// Time-domain double-quadrature controls for the brute-force oracle.
struct TimeQuadSpec {
  double half_width = 40.0;  // integration box [-L, L]
  int nodes = 24;
  double rel_tol = 1e-6;
};

/// E c_a conj(c_b) via the frequency-domain Parseval identity. Exact zero is
/// returned without quadrature when the two frequency supports are disjoint.
double coeff_cov(const SpectralModel& model, const WaveletPair& pair,
                 const CoefficientIndex& a, const CoefficientIndex& b,
                 const QuadSpec& qs = {});

/// E X(t) c_a, same Parseval pattern with the extra e^{-itz} factor.
double process_coeff_cov(const SpectralModel& model, const WaveletPair& pair,
                         double t, const CoefficientIndex& a,
                         const QuadSpec& qs = {});

/// Independent oracle: the pre-Parseval double time integral
/// int int R(u - v) w_a(u) w_b(v) du dv.
double brute_force_cov(const SpectralModel& model, const WaveletPair& pair,
                       const CoefficientIndex& a, const CoefficientIndex& b,
                       const TimeQuadSpec& ts = {});

/// True when the two coefficients' frequency supports have empty interior
/// intersection (cross-level sparsity of the Meyer annuli).
bool supports_disjoint(const WaveletPair& pair, const CoefficientIndex& a,
                       const CoefficientIndex& b);

/// Memoizing evaluator for covariance entries; exploits shift stationarity
/// so repeated (j, k - l) classes are integrated once.
class CovEngine {
 public:
  CovEngine(const SpectralModel& model, const WaveletPair& pair,
            const QuadSpec& qs = {});

  double coeff(const CoefficientIndex& a, const CoefficientIndex& b) const;
  double process_coeff(double t, const CoefficientIndex& a) const;

  const SpectralModel& model() const { return model_; }
  const WaveletPair& pair() const { return pair_; }
  const QuadSpec& quad_spec() const { return qs_; }

 private:
  const SpectralModel& model_;
  const WaveletPair& pair_;
  QuadSpec qs_;
  mutable std::unordered_map<uint64_t, double> cc_cache_;
  mutable std::map<std::pair<uint64_t, uint64_t>, double> pc_cache_;
};

struct JointIndexEntry {
  bool is_grid = false;
  double t = 0.0;           // grid time, when is_grid
  CoefficientIndex coeff;   // coefficient index, otherwise
};

/// Exact joint Gaussian covariance of (X(t_1..t_m), coefficients).
struct JointCovariance {
  std::vector<JointIndexEntry> index;
  Eigen::MatrixXd matrix;
  double jitter = 0.0;       // recorded diagonal repair magnitude
  Eigen::MatrixXd factor;    // matrix ~= factor * factor^T
};

JointCovariance assemble_joint_covariance(const CovEngine& engine,
                                          const TruncationScheme& scheme,
                                          const std::vector<double>& grid);

struct DecayEntry {
  std::string bound_id;
  int j = 0;
  int k = 0;
  int l = 0;
  double actual = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // bound / |actual|
};

struct DecayReport {
  std::vector<DecayEntry> entries;
  bool pass = true;
  double min_margin = 0.0;
  std::string first_failure;
};

/// Checks every proved coefficient-moment decay bound on the given index
/// ranges; the four A-constants come from the constants ledger.
DecayReport decay_certificate(const CovEngine& engine,
                              const std::vector<int>& levels, int k_max,
                              double a_psi, double a1_psi, double a_phi,
                              double a1_phi);

}  // namespace wavexp
