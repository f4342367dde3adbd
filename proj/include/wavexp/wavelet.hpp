#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "wavexp/scheme.hpp"

namespace wavexp {

enum class FreqMember { Phi, Psi, PhiD1, PsiD1, PsiD2 };
enum class TimeMember { Phi, Psi };

struct DyadicIndex {
  int j = 0;  // level, >= 0
  int k = 0;  // shift
};

/// Frequency-domain description of one wavelet: nonzero only for
/// support_lo <= |z| <= support_hi; eval(z, d) returns the d-th derivative,
/// d in {0, 1, 2}.
struct FrequencyForm {
  double support_lo = 0.0;
  double support_hi = 0.0;
  std::function<std::complex<double>(double z, int order)> eval;
};

/// Decay envelope |w(t)| <= amplitude / (1 + |t|)^exponent.
struct Envelope {
  double amplitude = 0.0;
  double exponent = 0.0;
};

/// Meyer wavelet pair with polynomial auxiliary function. The frequency side
/// is closed form and compactly supported; the time side is evaluated from a
/// cached inverse-Fourier grid with 6-point Lagrange interpolation.
class WaveletPair {
 public:
  /// aux_order >= 3; taper polynomial has aux_order vanishing derivatives at
  /// both junctions, giving a C^aux_order frequency side and time decay
  /// exponent aux_order + 1.
  static WaveletPair build_meyer(int aux_order);

  int aux_order() const { return aux_order_; }
  const FrequencyForm& phi_hat() const { return phi_hat_; }
  const FrequencyForm& psi_hat() const { return psi_hat_; }
  const Envelope& envelope_phi() const { return envelope_phi_; }
  const Envelope& envelope_psi() const { return envelope_psi_; }

  std::complex<double> eval_frequency(FreqMember m, double z) const;

  /// Real modulus of phi_hat (phi_hat is real and even). order in {0,1,2}.
  double phi_mod(double z, int order) const;
  /// Real modulus of psi_hat: psi_hat(z) = exp(-iz/2) * psi_mod(z).
  double psi_mod(double z, int order) const;

  /// Base function phi(t) or psi(t) from the interpolated cache; exact zero
  /// is returned outside the cached range (the envelope bounds the residue).
  double base_time(TimeMember m, double t) const;

  /// 2^{j/2} w(2^j t - k).
  double eval_time(TimeMember m, DyadicIndex idx, double t) const;
  double eval_time(const CoefficientIndex& ci, double t) const;

  double cache_half_range() const { return cache_half_range_; }

 private:
  WaveletPair() = default;
  void build_time_cache();

  int aux_order_ = 0;
  std::vector<double> aux_coeffs_;  // taper polynomial nu(x), ascending powers
  FrequencyForm phi_hat_;
  FrequencyForm psi_hat_;
  Envelope envelope_phi_;
  Envelope envelope_psi_;

  double cache_half_range_ = 64.0;
  double cache_step_ = 1.0 / 256.0;
  std::shared_ptr<const std::vector<double>> phi_cache_;
  std::shared_ptr<const std::vector<double>> psi_cache_;
};

/// Assumption-S style envelope fit: exponent = aux_order + 1, amplitude the
/// max of |w(t)| (1+t)^p over a dense grid in [0, t_max].
Envelope fit_envelope(const WaveletPair& pair, TimeMember member, double t_max);

/// Built-in catalog for deterministic expansion demos.
struct FunctionSpec {
  enum class Kind { GaussianBump, Zero };
  Kind kind = Kind::Zero;
  double center = 0.0;
  double width = 1.0;  // f(t) = exp(-(t-center)^2 / width^2)

  double operator()(double t) const;
  double l2_norm_squared() const;
};

struct ExpansionResult {
  std::vector<double> alpha;               // scaling coefficients, k = -k0..k0
  std::vector<std::vector<double>> beta;   // per level, k = -kj..kj
  double coeff_energy = 0.0;               // sum |alpha|^2 + sum |beta|^2
  std::vector<double> reconstruction;      // on the supplied grid
  double l2_error = 0.0;                   // grid L2 error vs f
};

ExpansionResult deterministic_expand(const WaveletPair& pair,
                                     const FunctionSpec& f,
                                     const TruncationScheme& scheme,
                                     const std::vector<double>& grid);

}  // namespace wavexp
