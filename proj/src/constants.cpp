#include "wavexp/constants.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "wavexp/quadrature.hpp"
#include "wavexp/rng.hpp"

namespace wavexp {

namespace {

double golden_max(const std::function<double(double)>& f, double lo,
                  double hi) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-14 * (std::abs(b) + 1.0); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = f(x1);
    }
  }
  return std::max({f(0.5 * (a + b)), f(lo), f(hi)});
}

/// sup of f over [lo, hi]: dense grid then golden-section refinement around
/// the best grid point.
double grid_sup(const std::function<double(double)>& f, double lo, double hi) {
  const int n = 40000;
  double best = f(lo);
  int best_i = 0;
  const double h = (hi - lo) / n;
  for (int i = 1; i <= n; ++i) {
    const double v = f(lo + i * h);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  const double a = lo + std::max(0, best_i - 1) * h;
  const double b = lo + std::min(n, best_i + 1) * h;
  return golden_max(f, a, b);
}

/// 2 * integral of f over [0, inf) for even integrands decaying past z0:
/// doubling segments until the increment is negligible.
double even_line_integral(const std::function<double(double)>& f, double z0,
                          const std::string& label) {
  double total = quad::integrate_adaptive(f, 0.0, z0, 1e-12, 1e-300);
  double prev_inc = 0.0;
  double z = z0;
  for (int m = 0; m < 60; ++m) {
    const double inc = quad::integrate_adaptive(f, z, 2.0 * z, 1e-12, 1e-300);
    total += inc;
    z *= 2.0;
    if (std::abs(inc) < 1e-13 * std::abs(total) + 1e-300) return 2.0 * total;
    if (m > 4 && prev_inc != 0.0) {
      const double ratio = inc / prev_inc;
      if (ratio >= 0.9)
        throw std::runtime_error(label +
                                 ": integral fails to converge (condition 6 "
                                 "finiteness violated)");
      if (m == 59) total += inc * ratio / (1.0 - ratio);
    }
    prev_inc = inc;
  }
  return 2.0 * total;
}

/// Riemann zeta-style p-series with Euler-Maclaurin tail.
double p_series(double p) {
  if (p <= 1.0) throw std::invalid_argument("p-series requires p > 1");
  const int N = 20000;
  double s = 0.0;
  for (int k = N - 1; k >= 1; --k) s += std::pow(k, -p);
  const double n = N;
  s += std::pow(n, 1.0 - p) / (p - 1.0) + 0.5 * std::pow(n, -p) +
       p * std::pow(n, -p - 1.0) / 12.0 -
       p * (p + 1.0) * (p + 2.0) * std::pow(n, -p - 3.0) / 720.0;
  return s;
}

double c_alpha_sup(double alpha, double T) {
  auto f = [&](double h) {
    return h * std::pow(std::log(std::exp(alpha) + 1.0 / h), alpha);
  };
  return golden_max(f, 1e-12, T);
}

}  // namespace

ConstantsLedger compute_constants(const WaveletPair& pair,
                                  const SpectralModel& model, double alpha,
                                  double gamma, double T) {
  if (!(alpha > 0.5 && alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in (1/2, 1]");
  if (!(gamma > 0.0 && gamma < 0.5))
    throw std::invalid_argument("gamma must lie in (0, 1/2)");
  if (!(T > 0.0)) throw std::invalid_argument("T must be positive");

  ConstantsLedger g;
  g.alpha = alpha;
  g.gamma = gamma;
  g.beta = 1.0 - gamma;
  g.delta = 0.5 * (2.0 - 1.0 / g.beta);
  g.T = T;

  const auto& psi = pair.psi_hat();
  const auto& phi = pair.phi_hat();
  auto abs_psi = [&](double v) { return std::abs(psi.eval(v, 0)); };
  auto abs_phi = [&](double v) { return std::abs(phi.eval(v, 0)); };
  auto logw = [&](double v) { return std::pow(std::log1p(v), alpha); };

  auto even_compact = [&](const std::function<double(double)>& f, double lo,
                          double hi) {
    return 2.0 * quad::integrate_adaptive(f, lo, hi, 1e-12, 1e-300);
  };

  g.c0 = even_compact([&](double v) { return std::pow(abs_psi(v), gamma); },
                      psi.support_lo, psi.support_hi);
  g.c1 = even_compact(
      [&](double v) { return logw(v) * std::pow(abs_psi(v), gamma); },
      psi.support_lo, psi.support_hi);
  g.c2 = even_compact(abs_psi, psi.support_lo, psi.support_hi);
  g.c3 = even_compact([&](double v) { return logw(v) * abs_psi(v); },
                      psi.support_lo, psi.support_hi);
  g.c_phi0 = even_compact([&](double v) { return std::pow(abs_phi(v), gamma); },
                          0.0, phi.support_hi);
  g.c_phi1 = even_compact(
      [&](double v) { return logw(v) * std::pow(abs_phi(v), gamma); }, 0.0,
      phi.support_hi);
  g.c_phi2 = even_compact(abs_phi, 0.0, phi.support_hi);
  g.c_phi3 = even_compact([&](double v) { return logw(v) * abs_phi(v); }, 0.0,
                          phi.support_hi);

  g.c_phi = grid_sup(abs_phi, 0.0, phi.support_hi);
  g.c_phi_d1 =
      grid_sup([&](double v) { return std::abs(phi.eval(v, 1)); }, 0.0,
               phi.support_hi);
  g.c_psi_d1 =
      grid_sup([&](double v) { return std::abs(psi.eval(v, 1)); },
               psi.support_lo, psi.support_hi);
  g.c_psi_d2 =
      grid_sup([&](double v) { return std::abs(psi.eval(v, 2)); },
               psi.support_lo, psi.support_hi);

  const double z0 = std::max(1.0, model.tail_cutoff(1e-12));
  auto rhat = [&](double z) { return std::abs(model.density(z)); };
  auto rhat_d1 = [&](double z) { return std::abs(model.density_d1(z)); };
  const double int_rhat = even_line_integral(rhat, z0, "int |Rhat|");
  const double int_rhat_d1 =
      even_line_integral(rhat_d1, z0, "int |Rhat'|");
  const double int_rhat_z3 = even_line_integral(
      [&](double z) { return rhat(z) * z * z * z; }, z0, "int |Rhat| z^3");
  const double int_rhat_z4 = even_line_integral(
      [&](double z) { return rhat(z) * z * z * z * z; }, z0,
      "int |Rhat| z^4");
  const double int_rhat_d1_z4 = even_line_integral(
      [&](double z) { return rhat_d1(z) * z * z * z * z; }, z0,
      "int |Rhat'| z^4");

  const double two_pi = 2.0 * M_PI;
  g.a_psi = g.c_psi_d2 * g.c_psi_d2 / two_pi *
            (int_rhat_d1_z4 + 2.0 * int_rhat_z3);
  g.a1_psi = g.c_psi_d2 * g.c_psi_d2 / two_pi * int_rhat_z4;
  g.a_phi = (g.c_phi * g.c_phi * int_rhat_d1 +
             2.0 * g.c_phi * g.c_phi_d1 * int_rhat) /
            two_pi;
  g.a1_phi = g.c_phi * g.c_phi / two_pi * int_rhat;

  g.c_alpha = c_alpha_sup(alpha, T);

  const double ln5a = std::pow(std::log(5.0), alpha);
  const double beta = g.beta;
  auto assemble_k = [&](double sup_d1, double i0, double i1, double i2,
                        double i3) {
    return (std::pow(2.0, 3.0 + alpha - beta) * std::pow(M_PI, beta) *
                std::pow(sup_d1, beta) * (ln5a * i0 + i1) +
            M_PI * T * std::pow(2.0, alpha - 1.0) * (ln5a * i2 + i3) +
            g.c_alpha * i2) /
           M_PI;
  };
  g.K = assemble_k(g.c_psi_d1, g.c0, g.c1, g.c2, g.c3);
  g.K_phi = assemble_k(g.c_phi_d1, g.c_phi0, g.c_phi1, g.c_phi2, g.c_phi3);

  {
    const int M = 1500;
    double qsum = 0.0;
    for (int k = -M; k <= M; ++k) {
      if (k == 0) continue;
      const double pk = std::pow(std::abs(k), -beta);
      for (int l = -M; l <= M; ++l) {
        if (l == 0 || l == k) continue;
        qsum += pk * std::pow(std::abs(l), -beta) /
                (4.0 * std::abs(k - l));
      }
    }
    g.Q_direct = qsum;
  }
  const double c_delta =
      std::pow(g.delta, -g.delta) * std::pow(1.0 - g.delta, g.delta - 1.0);
  {
    const double s1 = 0.5 * p_series(0.5 + beta);
    g.Q = s1 * s1 + std::pow(c_delta, beta) * p_series(1.0 + g.delta * beta) *
                        p_series((2.0 - g.delta) * beta);
  }
  if (g.Q_direct > g.Q * (1.0 + 1e-12))
    throw std::runtime_error(
        "direct double-sum exceeds its convergent majorant");

  const double zeta_1b = p_series(1.0 + beta);
  const double zeta_2b = p_series(2.0 * beta);
  g.q = std::pow(2.0, alpha) * g.a_psi * g.K * (ln5a * g.c2 + g.c3) / M_PI *
        zeta_1b;
  g.q1 = 0.5 * g.a1_psi * g.K * g.K * zeta_2b;
  g.q2 = std::pow(2.0, 2.0 * alpha) * g.a1_psi / (M_PI * M_PI) *
         std::pow(ln5a * g.c2 + g.c3, 2.0);
  g.q_phi = std::pow(2.0, alpha) / M_PI * g.a_phi * g.K_phi *
            (ln5a * g.c_phi2 + g.c_phi3) * zeta_1b;
  g.q_phi1 = 0.5 * g.a1_phi * g.K_phi * g.K_phi * zeta_2b;
  g.q_phi2 = std::pow(2.0, 2.0 * alpha) * g.a1_phi / (M_PI * M_PI) *
             std::pow(ln5a * g.c_phi2 + g.c_phi3, 2.0);

  double jseries = 0.0;
  for (int j = 0;; ++j) {
    const double term = std::pow(j + 1.0, alpha) * std::pow(2.0, -0.5 * j);
    jseries += term;
    if (term < 1e-16 * jseries) break;
  }
  g.B1 = std::sqrt(g.q2 + g.q1 + g.a_psi * g.Q * g.K * g.K + 2.0 * g.q) *
         jseries;
  g.B2 = std::sqrt(g.q_phi1 + g.q_phi2 + g.a_phi * g.K_phi * g.K_phi * g.Q +
                   2.0 * g.q_phi);
  g.B = g.B1 + g.B2;
  return g;
}

ModulusReport verify_modulus_bound(
    const CovEngine& engine, const std::vector<TruncationScheme>& schemes,
    const ConstantsLedger& ledger,
    const std::vector<std::pair<double, double>>& pairs) {
  ModulusReport report;
  report.min_margin = std::numeric_limits<double>::infinity();
  const auto& wpair = engine.pair();

  for (const auto& scheme : schemes) {
    const auto idx = scheme.indices();
    const auto m = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd C(m, m);
    for (Eigen::Index a = 0; a < m; ++a)
      for (Eigen::Index b = a; b < m; ++b) {
        const double v = engine.coeff(idx[static_cast<size_t>(a)],
                                      idx[static_cast<size_t>(b)]);
        C(a, b) = v;
        C(b, a) = v;
      }

    for (const auto& [t, s] : pairs) {
      Eigen::VectorXd d(m);
      for (Eigen::Index a = 0; a < m; ++a) {
        const auto& ci = idx[static_cast<size_t>(a)];
        d[a] = wpair.eval_time(ci, t) - wpair.eval_time(ci, s);
      }
      const double lhs = std::sqrt(std::max(0.0, d.dot(C * d)));
      ModulusCheckEntry e;
      e.n = scheme.n;
      e.k = scheme.kj.empty() ? scheme.k0 : scheme.kj.front();
      e.t = t;
      e.s = s;
      e.lhs = lhs;
      if (t == s) {
        e.bound = 0.0;
        e.margin = std::numeric_limits<double>::infinity();
      } else {
        const double logf = std::pow(
            std::log(std::exp(ledger.alpha) + 1.0 / std::abs(t - s)),
            -ledger.alpha);
        e.bound = ledger.B * logf;
        e.margin = (lhs == 0.0) ? std::numeric_limits<double>::infinity()
                                : e.bound / lhs;
        report.empirical_envelope =
            std::max(report.empirical_envelope, lhs / logf);
      }
      if (e.margin < report.min_margin) report.min_margin = e.margin;
      if (e.margin < 1.0) report.pass = false;
      report.entries.push_back(e);
    }
  }
  return report;
}

InequalityReport verify_elementary_inequalities(double alpha, double T,
                                                size_t samples,
                                                uint64_t seed) {
  if (!(alpha > 0.5 && alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in (1/2, 1]");
  InequalityReport rep;
  rep.samples = samples;
  const double c_alpha = c_alpha_sup(alpha, T);
  const double ea = std::exp(alpha);
  NormalStream rng(seed, 0x1eee);

  for (size_t i = 0; i < samples; ++i) {
    const double t = rng.next_uniform() * T;
    const double s = rng.next_uniform() * T;
    // log-uniform magnitude over 14 decades keeps both tiny and huge z
    const double z = std::copysign(
        std::pow(10.0, -6.0 + 14.0 * rng.next_uniform()),
        rng.next_uniform() - 0.5);

    if (t != s) {
      const double lhs = 2.0 * std::abs(std::sin(0.5 * (t - s) * z));
      const double rhs =
          2.0 * std::pow(std::log(ea + 0.5 * std::abs(z)) /
                             std::log(ea + 1.0 / std::abs(t - s)),
                         alpha);
      const double ratio = lhs / rhs;
      rep.max_ratio_exp = std::max(rep.max_ratio_exp, ratio);
      if (ratio > 1.0 + 1e-12) ++rep.violations;
    }

    const int j = static_cast<int>(rng.next_uniform() * 41.0);
    const double u = std::pow(10.0, -8.0 + 16.0 * rng.next_uniform());
    {
      const double lhs = std::log(ea + std::ldexp(u, j - 1));
      const double rhs = (j + 1.0) * std::log(5.0) + std::log1p(u);
      const double ratio = lhs / rhs;
      rep.max_ratio_log_split = std::max(rep.max_ratio_log_split, ratio);
      if (ratio > 1.0 + 1e-12) ++rep.violations;
    }

    const double h = T * std::pow(10.0, -12.0 * rng.next_uniform());
    {
      const double rhs = c_alpha * std::pow(std::log(ea + 1.0 / h), -alpha);
      const double ratio = h / rhs;
      rep.max_ratio_h_bound = std::max(rep.max_ratio_h_bound, ratio);
      if (ratio > 1.0 + 1e-12) ++rep.violations;
    }
  }
  rep.max_ratio = std::max(
      {rep.max_ratio_exp, rep.max_ratio_log_split, rep.max_ratio_h_bound});
  rep.pass = rep.violations == 0;
  return rep;
}

}  // namespace wavexp
