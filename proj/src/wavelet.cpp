#include "wavexp/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wavexp/quadrature.hpp"

namespace wavexp {

namespace {

constexpr double kA = 2.0 * M_PI / 3.0;   // phi taper start, psi support start
constexpr double kB = 4.0 * M_PI / 3.0;   // phi support end, psi branch switch
constexpr double kC = 8.0 * M_PI / 3.0;   // psi support end

// Taper polynomial nu_n(x) = x^{n+1} sum_{k=0}^{n} C(n+k, k) (1-x)^k,
// ascending coefficient order. nu(0)=0, nu(1)=1, nu(x)+nu(1-x)=1, and the
// first n derivatives vanish at both endpoints.
std::vector<double> aux_polynomial(int n) {
  std::vector<double> acc(1, 0.0);
  std::vector<double> term(1, 1.0);  // (1-x)^k, updated in place
  double binom = 1.0;                // C(n+k, k)
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      binom *= static_cast<double>(n + k) / k;
      // multiply term by (1 - x)
      std::vector<double> next(term.size() + 1, 0.0);
      for (size_t i = 0; i < term.size(); ++i) {
        next[i] += term[i];
        next[i + 1] -= term[i];
      }
      term = std::move(next);
    }
    if (acc.size() < term.size()) acc.resize(term.size(), 0.0);
    for (size_t i = 0; i < term.size(); ++i) acc[i] += binom * term[i];
  }
  // multiply by x^{n+1}
  std::vector<double> out(acc.size() + static_cast<size_t>(n) + 1, 0.0);
  for (size_t i = 0; i < acc.size(); ++i) out[i + static_cast<size_t>(n) + 1] = acc[i];
  return out;
}

double poly_eval(const std::vector<double>& c, double x, int deriv) {
  double v = 0.0;
  for (int i = static_cast<int>(c.size()) - 1; i >= deriv; --i) {
    double f = 1.0;
    for (int d = 0; d < deriv; ++d) f *= static_cast<double>(i - d);
    v = v * x + f * c[static_cast<size_t>(i)];
  }
  return v;
}

struct Theta {
  double v, d1, d2;  // theta(y) and derivatives in y
};

// theta(y) = (pi/2) nu(scale * y + shift)
Theta theta_at(const std::vector<double>& nu, double y, double scale,
               double shift) {
  const double s = scale * y + shift;
  Theta t;
  t.v = 0.5 * M_PI * poly_eval(nu, s, 0);
  t.d1 = 0.5 * M_PI * scale * poly_eval(nu, s, 1);
  t.d2 = 0.5 * M_PI * scale * scale * poly_eval(nu, s, 2);
  return t;
}

// real even modulus of phi_hat at y >= 0, with derivatives in y
void phi_branch(const std::vector<double>& nu, double y, double out[3]) {
  if (y > kB) {
    out[0] = out[1] = out[2] = 0.0;
    return;
  }
  if (y < kA) {
    out[0] = 1.0;
    out[1] = out[2] = 0.0;
    return;
  }
  const Theta th = theta_at(nu, y, 1.5 / M_PI, -1.0);
  const double c = std::cos(th.v), s = std::sin(th.v);
  out[0] = c;
  out[1] = -s * th.d1;
  out[2] = -c * th.d1 * th.d1 - s * th.d2;
}

void psi_branch(const std::vector<double>& nu, double y, double out[3]) {
  if (y < kA || y > kC) {
    out[0] = out[1] = out[2] = 0.0;
    return;
  }
  if (y <= kB) {
    const Theta th = theta_at(nu, y, 1.5 / M_PI, -1.0);
    const double c = std::cos(th.v), s = std::sin(th.v);
    out[0] = s;
    out[1] = c * th.d1;
    out[2] = -s * th.d1 * th.d1 + c * th.d2;
  } else {
    const Theta th = theta_at(nu, y, 0.75 / M_PI, -1.0);
    const double c = std::cos(th.v), s = std::sin(th.v);
    out[0] = c;
    out[1] = -s * th.d1;
    out[2] = -c * th.d1 * th.d1 - s * th.d2;
  }
}

double psi_mod_of(const std::vector<double>& nu, double z, int order) {
  double out[3];
  psi_branch(nu, std::abs(z), out);
  double v = out[order];
  if (z < 0.0 && (order % 2) == 1) v = -v;
  return v;
}

}  // namespace

double WaveletPair::phi_mod(double z, int order) const {
  double out[3];
  phi_branch(aux_coeffs_, std::abs(z), out);
  double v = out[order];
  if (z < 0.0 && (order % 2) == 1) v = -v;
  return v;
}

double WaveletPair::psi_mod(double z, int order) const {
  return psi_mod_of(aux_coeffs_, z, order);
}

std::complex<double> WaveletPair::eval_frequency(FreqMember m, double z) const {
  switch (m) {
    case FreqMember::Phi:
      return {phi_mod(z, 0), 0.0};
    case FreqMember::PhiD1:
      return {phi_mod(z, 1), 0.0};
    case FreqMember::Psi:
      return psi_hat_.eval(z, 0);
    case FreqMember::PsiD1:
      return psi_hat_.eval(z, 1);
    case FreqMember::PsiD2:
      return psi_hat_.eval(z, 2);
  }
  return {0.0, 0.0};
}

WaveletPair WaveletPair::build_meyer(int aux_order) {
  if (aux_order < 3)
    throw std::invalid_argument(
        "build_meyer: aux_order must be >= 3 (psi_hat needs two continuous "
        "derivatives)");
  WaveletPair p;
  p.aux_order_ = aux_order;
  p.aux_coeffs_ = aux_polynomial(aux_order);

  p.phi_hat_.support_lo = 0.0;
  p.phi_hat_.support_hi = kB;
  p.phi_hat_.eval = [nu = p.aux_coeffs_](double z,
                                         int order) -> std::complex<double> {
    if (std::abs(z) > kB) return {0.0, 0.0};
    double out[3];
    phi_branch(nu, std::abs(z), out);
    double v = out[order];
    if (z < 0.0 && (order % 2) == 1) v = -v;
    return {v, 0.0};
  };

  p.psi_hat_.support_lo = kA;
  p.psi_hat_.support_hi = kC;
  p.psi_hat_.eval = [nu = p.aux_coeffs_](double z,
                                         int order) -> std::complex<double> {
    const double a = std::abs(z);
    if (a < kA || a > kC) return {0.0, 0.0};
    const std::complex<double> phase = std::exp(std::complex<double>(0.0, -0.5 * z));
    const double m0 = psi_mod_of(nu, z, 0);
    if (order == 0) return phase * m0;
    const double m1 = psi_mod_of(nu, z, 1);
    if (order == 1) return phase * std::complex<double>(m1, -0.5 * m0);
    const double m2 = psi_mod_of(nu, z, 2);
    return phase * std::complex<double>(m2 - 0.25 * m0, -m1);
  };

  p.build_time_cache();
  p.envelope_phi_ = fit_envelope(p, TimeMember::Phi, 60.0);
  p.envelope_psi_ = fit_envelope(p, TimeMember::Psi, 60.0);
  return p;
}

void WaveletPair::build_time_cache() {
  // phi(t) = (1/pi) int_0^B phi_mod(y) cos(t y) dy
  // psi(t) = (1/pi) int_A^C psi_mod(y) cos((t - 1/2) y) dy
  const double panel = M_PI / 8.0;
  const size_t count =
      static_cast<size_t>(std::lround(2.0 * cache_half_range_ / cache_step_)) + 1;

  auto build = [&](TimeMember member) {
    const double lo = (member == TimeMember::Phi) ? 0.0 : kA;
    const double hi = (member == TimeMember::Phi) ? kB : kC;
    const double shift = (member == TimeMember::Phi) ? 0.0 : 0.5;

    auto precompute = [&](int nodes) {
      const auto& rule = quad::gauss_legendre(nodes);
      std::vector<std::pair<double, double>> nw;  // (y, weight * modulus / pi)
      const int panels = static_cast<int>(std::ceil((hi - lo) / panel));
      const double h = (hi - lo) / panels;
      for (int pnl = 0; pnl < panels; ++pnl) {
        const double mid = lo + (pnl + 0.5) * h;
        for (int i = 0; i < nodes; ++i) {
          const double y = mid + 0.5 * h * rule.nodes[i];
          const double mod =
              (member == TimeMember::Phi) ? phi_mod(y, 0) : psi_mod(y, 0);
          nw.emplace_back(y, 0.5 * h * rule.weights[i] * mod / M_PI);
        }
      }
      return nw;
    };

    const auto coarse = precompute(24);
    const auto fine = precompute(48);
    std::vector<double> values(count);
    for (size_t i = 0; i < count; ++i) {
      const double t = -cache_half_range_ + static_cast<double>(i) * cache_step_ - 0.0;
      const double arg = t - shift;
      double vc = 0.0, vf = 0.0;
      for (const auto& [y, w] : coarse) vc += w * std::cos(arg * y);
      for (const auto& [y, w] : fine) vf += w * std::cos(arg * y);
      if (std::abs(vf - vc) > 1e-8) {
        std::ostringstream msg;
        msg << "time cache quadrature non-convergence at t=" << t
            << ": coarse=" << vc << " fine=" << vf;
        throw quad::ConvergenceError(msg.str(), vc, vf);
      }
      values[i] = vf;
    }
    return std::make_shared<const std::vector<double>>(std::move(values));
  };

  phi_cache_ = build(TimeMember::Phi);
  psi_cache_ = build(TimeMember::Psi);
}

double WaveletPair::base_time(TimeMember m, double t) const {
  const auto& cache = (m == TimeMember::Phi) ? *phi_cache_ : *psi_cache_;
  if (std::abs(t) >= cache_half_range_) return 0.0;
  const double u = (t + cache_half_range_) / cache_step_;
  const long n = static_cast<long>(cache.size());
  long i0 = static_cast<long>(std::floor(u)) - 2;  // 6-point stencil start
  i0 = std::clamp(i0, 0L, n - 6);
  double result = 0.0;
  for (long a = i0; a < i0 + 6; ++a) {
    double w = 1.0;
    for (long b = i0; b < i0 + 6; ++b) {
      if (b == a) continue;
      w *= (u - static_cast<double>(b)) / static_cast<double>(a - b);
    }
    result += w * cache[static_cast<size_t>(a)];
  }
  return result;
}

double WaveletPair::eval_time(TimeMember m, DyadicIndex idx, double t) const {
  const double scale = std::ldexp(1.0, idx.j);  // 2^j
  return std::sqrt(scale) * base_time(m, scale * t - idx.k);
}

double WaveletPair::eval_time(const CoefficientIndex& ci, double t) const {
  if (ci.kind == CoefficientIndex::Kind::Scaling)
    return eval_time(TimeMember::Phi, {0, ci.k}, t);
  return eval_time(TimeMember::Psi, {ci.j, ci.k}, t);
}

Envelope fit_envelope(const WaveletPair& pair, TimeMember member,
                      double t_max) {
  if (t_max < 20.0)
    throw std::invalid_argument("fit_envelope: t_max must be >= 20");
  Envelope env;
  env.exponent = static_cast<double>(pair.aux_order() + 1);
  const double step = 0.005;
  double c = 0.0;
  const double hi = std::min(t_max, pair.cache_half_range());
  for (double t = 0.0; t <= hi; t += step) {
    const double v = std::abs(pair.base_time(member, t)) *
                     std::pow(1.0 + t, env.exponent);
    c = std::max(c, v);
  }
  env.amplitude = c;
  return env;
}

double FunctionSpec::operator()(double t) const {
  if (kind == Kind::Zero) return 0.0;
  const double d = (t - center) / width;
  return std::exp(-d * d);
}

double FunctionSpec::l2_norm_squared() const {
  if (kind == Kind::Zero) return 0.0;
  return width * std::sqrt(0.5 * M_PI);
}

ExpansionResult deterministic_expand(const WaveletPair& pair,
                                     const FunctionSpec& f,
                                     const TruncationScheme& scheme,
                                     const std::vector<double>& grid) {
  scheme.validate();
  ExpansionResult res;
  res.alpha.assign(static_cast<size_t>(2 * scheme.k0 + 1), 0.0);
  res.beta.resize(static_cast<size_t>(scheme.n));
  for (int j = 0; j < scheme.n; ++j)
    res.beta[static_cast<size_t>(j)].assign(
        static_cast<size_t>(2 * scheme.kj[static_cast<size_t>(j)] + 1), 0.0);

  const bool zero = (f.kind == FunctionSpec::Kind::Zero);
  const double f_lo = f.center - 9.0 * f.width;
  const double f_hi = f.center + 9.0 * f.width;

  auto coefficient = [&](TimeMember m, int j, int k) -> double {
    if (zero) return 0.0;
    const double scale = std::ldexp(1.0, j);
    const double w_lo = (k - 50.0) / scale;
    const double w_hi = (k + 50.0) / scale;
    const double lo = std::max(f_lo, w_lo), hi = std::min(f_hi, w_hi);
    if (lo >= hi) return 0.0;
    const double panel = std::min(0.5, 2.4 / scale);
    return quad::integrate_checked(
        [&](double t) { return f(t) * pair.eval_time(m, {j, k}, t); }, lo, hi,
        panel, 32, 1e-7, 3e-6);
  };

  for (int k = -scheme.k0; k <= scheme.k0; ++k)
    res.alpha[static_cast<size_t>(k + scheme.k0)] =
        coefficient(TimeMember::Phi, 0, k);
  for (int j = 0; j < scheme.n; ++j) {
    const int kj = scheme.kj[static_cast<size_t>(j)];
    for (int k = -kj; k <= kj; ++k)
      res.beta[static_cast<size_t>(j)][static_cast<size_t>(k + kj)] =
          coefficient(TimeMember::Psi, j, k);
  }

  for (double a : res.alpha) res.coeff_energy += a * a;
  for (const auto& level : res.beta)
    for (double b : level) res.coeff_energy += b * b;

  res.reconstruction.assign(grid.size(), 0.0);
  for (size_t i = 0; i < grid.size(); ++i) {
    double v = 0.0;
    for (int k = -scheme.k0; k <= scheme.k0; ++k)
      v += res.alpha[static_cast<size_t>(k + scheme.k0)] *
           pair.eval_time(TimeMember::Phi, {0, k}, grid[i]);
    for (int j = 0; j < scheme.n; ++j) {
      const int kj = scheme.kj[static_cast<size_t>(j)];
      for (int k = -kj; k <= kj; ++k)
        v += res.beta[static_cast<size_t>(j)][static_cast<size_t>(k + kj)] *
             pair.eval_time(TimeMember::Psi, {j, k}, grid[i]);
    }
    res.reconstruction[i] = v;
  }

  // trapezoidal grid L2 error
  double err2 = 0.0;
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    const double e0 = f(grid[i]) - res.reconstruction[i];
    const double e1 = f(grid[i + 1]) - res.reconstruction[i + 1];
    err2 += 0.5 * (e0 * e0 + e1 * e1) * (grid[i + 1] - grid[i]);
  }
  res.l2_error = std::sqrt(err2);
  return res;
}

}  // namespace wavexp
