#include "wavexp/admissibility.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wavexp/quadrature.hpp"

namespace wavexp {

double ModulusSpec::sigma(double h) const {
  if (family == Family::Power) return c * std::pow(h, exponent);
  return c * std::pow(std::log(std::exp(exponent) + 1.0 / h), -exponent);
}

double ModulusSpec::sigma_from_neglog(double x) const {
  if (family == Family::Power) return c * std::exp(-exponent * x);
  // ln(e^alpha + e^x) without overflow
  const double a = exponent;
  const double lg = (x >= a) ? x + std::log1p(std::exp(a - x))
                             : a + std::log1p(std::exp(x - a));
  return c * std::pow(lg, -a);
}

double neg_log_sigma_inverse(const ModulusSpec& spec, double u) {
  const double sigma_max = spec.sigma(spec.horizon);
  if (!(u > 0.0) || u >= sigma_max) {
    std::ostringstream msg;
    msg << "sigma_inverse: u must lie in (0, sigma(horizon)) = (0, "
        << sigma_max << "), got " << u;
    throw std::domain_error(msg.str());
  }
  // sigma(e^{-x}) is decreasing in x; bracket then bisect.
  double lo = -std::log(spec.horizon);
  double hi = std::max(1.0, lo + 1.0);
  while (spec.sigma_from_neglog(hi) >= u) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi))
      throw std::runtime_error("sigma_inverse: failed to bracket");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (spec.sigma_from_neglog(mid) >= u)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-14 * std::max(1.0, std::abs(lo))) break;
  }
  return 0.5 * (lo + hi);
}

double sigma_inverse(const ModulusSpec& spec, double u) {
  return std::exp(-neg_log_sigma_inverse(spec, u));
}

EntropyResult entropy_integral(const ModulusSpec& spec, double eps,
                               int panels) {
  const double sigma_max = spec.sigma(spec.horizon);
  if (!(eps > 0.0) || eps >= sigma_max)
    throw std::domain_error("entropy_integral: eps must lie in (0, sigma(horizon))");

  auto integrand = [&](double u) {
    return std::sqrt(std::max(0.0, neg_log_sigma_inverse(spec, u)));
  };

  EntropyResult res;
  constexpr int kDecades = 12;
  for (int d = 0; d < kDecades; ++d) {
    const double hi = eps * std::pow(10.0, -d);
    const double lo = hi / 10.0;
    const double contribution =
        quad::integrate(integrand, lo, hi, (hi - lo) / panels, 16);
    res.decade_contributions.push_back(contribution);
    res.value += contribution;
  }

  // geometric decay test over the last five decade ratios
  res.verdict = IntegralVerdict::Converges;
  const auto& c = res.decade_contributions;
  int sustained = 0;
  for (size_t d = c.size() - 5; d < c.size(); ++d) {
    if (c[d - 1] <= 0.0) continue;
    if (c[d] / c[d - 1] >= 0.999) ++sustained;
  }
  if (sustained == 5) res.verdict = IntegralVerdict::Diverges;
  return res;
}

namespace {

double grid_sup(const std::function<double(double)>& f, double lo, double hi,
                int points) {
  double sup = 0.0;
  for (int i = 0; i <= points; ++i)
    sup = std::max(sup, std::abs(f(lo + (hi - lo) * i / points)));
  return sup;
}

}  // namespace

ConditionReport check_wavelet_conditions(const WaveletPair& pair, double gamma,
                                         double alpha,
                                         const WaveletGridSpec& grid) {
  if (!(gamma > 0.0 && gamma < 0.5))
    throw std::invalid_argument("check_wavelet_conditions: gamma must lie in (0, 1/2)");
  if (!(alpha > 0.5 && alpha <= 1.0))
    throw std::invalid_argument("check_wavelet_conditions: alpha must lie in (1/2, 1]");

  ConditionReport report;
  const double hi = pair.psi_hat().support_hi;

  // condition 1: existence of phi'(u) in the time domain (finite difference
  // of the cached values), psi_hat'' everywhere, psi_hat and psi_hat' zero
  // at the origin (identically zero on a neighborhood of 0).
  double sup_phi_d1_time = 0.0;
  for (int i = 0; i <= 1024; ++i) {
    const double t = -8.0 + 16.0 * i / 1024.0;
    const double d =
        (pair.base_time(TimeMember::Phi, t + 5e-4) -
         pair.base_time(TimeMember::Phi, t - 5e-4)) / 1e-3;
    sup_phi_d1_time = std::max(sup_phi_d1_time, std::abs(d));
  }
  const double psi0 = std::abs(pair.eval_frequency(FreqMember::Psi, 0.0));
  const double psi0_d1 = std::abs(pair.eval_frequency(FreqMember::PsiD1, 0.0));
  const bool c1 = std::isfinite(sup_phi_d1_time) && psi0 == 0.0 && psi0_d1 == 0.0;
  report.add("cond1_smoothness", c1 ? Verdict::Pass : Verdict::Fail,
             {sup_phi_d1_time, psi0, psi0_d1},
             "phi'(u) exists, psi_hat(0) = psi_hat'(0) = 0");

  // condition 2: the three suprema, two grid resolutions agreeing within 1%
  auto sup2 = [&](FreqMember m, const char* id, const char* desc) {
    auto f = [&](double z) { return std::abs(pair.eval_frequency(m, z)); };
    const double a = grid_sup(f, -hi, hi, grid.coarse);
    const double b = grid_sup(f, -hi, hi, grid.fine);
    const bool ok = std::isfinite(b) && std::abs(b - a) <= 0.01 * std::max(b, 1e-12);
    report.add(id, ok ? Verdict::Pass : Verdict::Inconclusive, {b, a}, desc);
    return b;
  };
  sup2(FreqMember::Phi, "cond2_sup_phi_hat", "c_phi = sup |phi_hat|");
  sup2(FreqMember::PhiD1, "cond2_sup_phi_hat_d1", "c_phi' = sup |phi_hat'|");
  sup2(FreqMember::PsiD2, "cond2_sup_psi_hat_d2", "c_psi'' = sup |psi_hat''|");

  // condition 3: decay at +-infinity; exact for compact support
  double outside = 0.0;
  for (int i = 0; i <= 256; ++i) {
    const double z = hi + 1e-9 + i * 10.0;
    outside = std::max(outside, std::abs(pair.eval_frequency(FreqMember::Phi, z)));
    outside = std::max(outside, std::abs(pair.eval_frequency(FreqMember::Psi, z)));
  }
  report.add("cond3_decay_at_infinity",
             outside == 0.0 ? Verdict::Pass : Verdict::Fail, {outside},
             "phi_hat and psi_hat vanish beyond their supports");

  // condition 4: log-weighted fractional integrals, finite range for Meyer
  auto logfrac = [&](auto mod, double lo_supp, double hi_supp) {
    auto f = [&](double u) {
      return std::pow(std::log1p(std::abs(u)), alpha) *
             std::pow(std::abs(mod(u)), gamma);
    };
    return 2.0 * quad::integrate_adaptive(f, lo_supp, hi_supp, 1e-10, 1e-13);
  };
  const double int_psi = logfrac([&](double u) { return pair.psi_mod(u, 0); },
                                 pair.psi_hat().support_lo, hi);
  const double int_phi = logfrac([&](double u) { return pair.phi_mod(u, 0); },
                                 0.0, pair.phi_hat().support_hi);
  const bool c4 = std::isfinite(int_psi) && std::isfinite(int_phi);
  report.add("cond4_log_fractional_integrals", c4 ? Verdict::Pass : Verdict::Fail,
             {int_psi, int_phi},
             "int (ln(1+|u|))^alpha |w_hat(u)|^gamma du finite for psi and phi");
  return report;
}

}  // namespace wavexp
