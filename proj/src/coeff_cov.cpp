#include "wavexp/coeff_cov.hpp"

#include <cmath>
#include <complex>
#include <cstring>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "wavexp/quadrature.hpp"

namespace wavexp {

namespace {

using cplx = std::complex<double>;

struct Support {
  double lo = 0.0;  // in |z|
  double hi = 0.0;
};

Support support_of(const WaveletPair& pair, const CoefficientIndex& a) {
  if (a.kind == CoefficientIndex::Kind::Scaling)
    return {pair.phi_hat().support_lo, pair.phi_hat().support_hi};
  const double scale = std::ldexp(1.0, a.j);
  return {pair.psi_hat().support_lo * scale, pair.psi_hat().support_hi * scale};
}

cplx w_hat(const WaveletPair& pair, const CoefficientIndex& a, double z) {
  if (a.kind == CoefficientIndex::Kind::Scaling)
    return std::exp(cplx(0.0, -a.k * z)) * pair.phi_hat().eval(z, 0);
  const double inv = std::ldexp(1.0, -a.j);  // 2^{-j}
  return std::sqrt(inv) * std::exp(cplx(0.0, -a.k * z * inv)) *
         pair.psi_hat().eval(z * inv, 0);
}

// Largest |d phase / dz| of e^{-ikz/2^j}: k / 2^j.
double phase_rate(const CoefficientIndex& a) {
  if (a.kind == CoefficientIndex::Kind::Scaling) return std::abs(a.k);
  return std::abs(a.k) * std::ldexp(1.0, -a.j) + std::ldexp(1.0, -a.j - 1);
}

double oscillation_panel(const QuadSpec& qs, double rate) {
  return std::min(qs.panel_width, 5.0 / std::max(1.0, rate));
}

// Integrates f over the two-sided region lo <= |z| <= hi with node-doubling
// convergence check, asserts a negligible imaginary residue, returns Re.
double two_sided_real(const std::function<cplx(double)>& f, double lo,
                      double hi, double panel, const QuadSpec& qs,
                      double abs_floor) {
  cplx v;
  if (lo <= 0.0) {
    v = quad::integrate_checked_complex(f, -hi, hi, panel, qs.nodes,
                                        qs.rel_tol, abs_floor);
  } else {
    v = quad::integrate_checked_complex(f, lo, hi, panel, qs.nodes, qs.rel_tol,
                                        abs_floor) +
        quad::integrate_checked_complex(f, -hi, -lo, panel, qs.nodes,
                                        qs.rel_tol, abs_floor);
  }
  if (std::abs(v.imag()) > 1e-10 * (std::abs(v.real()) + 1.0)) {
    std::ostringstream msg;
    msg << "Parseval integral has non-negligible imaginary residue "
        << v.imag() << " (real part " << v.real() << ")";
    throw std::runtime_error(msg.str());
  }
  return v.real();
}

}  // namespace

bool supports_disjoint(const WaveletPair& pair, const CoefficientIndex& a,
                       const CoefficientIndex& b) {
  const Support sa = support_of(pair, a), sb = support_of(pair, b);
  return std::min(sa.hi, sb.hi) <= std::max(sa.lo, sb.lo);
}

double coeff_cov(const SpectralModel& model, const WaveletPair& pair,
                 const CoefficientIndex& a, const CoefficientIndex& b,
                 const QuadSpec& qs) {
  const Support sa = support_of(pair, a), sb = support_of(pair, b);
  double lo = std::max(sa.lo, sb.lo);
  double hi = std::min(sa.hi, sb.hi);
  if (hi <= lo) return 0.0;  // exact cross-level sparsity
  hi = std::min(hi, model.tail_cutoff(qs.tail_rel));
  if (hi <= lo) return 0.0;  // clipped: omitted spectral mass below tail_rel

  const double rate = phase_rate(a) + phase_rate(b);
  const double panel = oscillation_panel(qs, rate);
  auto f = [&](double z) -> cplx {
    return model.density(z) * std::conj(w_hat(pair, a, z)) *
           w_hat(pair, b, z) / (2.0 * M_PI);
  };
  // rel_tol * floor must clear the cancellation noise of the oscillatory sum
  const double floor = 1e-7 * std::max(1.0, model.variance);
  return two_sided_real(f, lo, hi, panel, qs, floor);
}

double process_coeff_cov(const SpectralModel& model, const WaveletPair& pair,
                         double t, const CoefficientIndex& a,
                         const QuadSpec& qs) {
  const Support sa = support_of(pair, a);
  double lo = sa.lo;
  double hi = std::min(sa.hi, model.tail_cutoff(qs.tail_rel));
  if (hi <= lo) return 0.0;

  const double rate = phase_rate(a) + std::abs(t);
  const double panel = oscillation_panel(qs, rate);
  auto f = [&](double z) -> cplx {
    return model.density(z) * std::exp(cplx(0.0, -t * z)) *
           std::conj(w_hat(pair, a, z)) / (2.0 * M_PI);
  };
  // rel_tol * floor must clear the cancellation noise of the oscillatory sum
  const double floor = 1e-7 * std::max(1.0, model.variance);
  return two_sided_real(f, lo, hi, panel, qs, floor);
}

double brute_force_cov(const SpectralModel& model, const WaveletPair& pair,
                       const CoefficientIndex& a, const CoefficientIndex& b,
                       const TimeQuadSpec& ts) {
  if (ts.half_width < 40.0)
    throw std::invalid_argument("brute_force_cov: time box must have L >= 40");

  // Per-coefficient quadrature nodes over the effective time support.
  auto nodes_for = [&](const CoefficientIndex& ci, int nodes) {
    const double scale =
        std::ldexp(1.0, ci.kind == CoefficientIndex::Kind::Detail ? ci.j : 0);
    const double window = 55.0;  // |2^j t - k| <= window carries the mass
    const double lo = std::max(-ts.half_width, (ci.k - window) / scale);
    const double hi = std::min(ts.half_width, (ci.k + window) / scale);
    const double panel = 1.0 / scale;  // basis oscillates at scale 2^j
    std::vector<std::pair<double, double>> out;  // (t, weight * w(t))
    const auto& rule = quad::gauss_legendre(nodes);
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / panel)));
    const double h = (hi - lo) / panels;
    out.reserve(static_cast<size_t>(panels) * static_cast<size_t>(nodes));
    for (int p = 0; p < panels; ++p) {
      const double mid = lo + (p + 0.5) * h;
      for (int i = 0; i < nodes; ++i) {
        const double t = mid + 0.5 * h * rule.nodes[i];
        out.emplace_back(t, 0.5 * h * rule.weights[i] * pair.eval_time(ci, t));
      }
    }
    return out;
  };

  auto value_with = [&](int nodes) {
    const auto na = nodes_for(a, nodes);
    const auto nb = nodes_for(b, nodes);
    double total = 0.0;
    for (const auto& [u, wu] : na) {
      double inner = 0.0;
      for (const auto& [v, wv] : nb) inner += wv * model.covariance(u - v);
      total += wu * inner;
    }
    return total;
  };

  const double coarse = value_with(ts.nodes);
  const double fine = value_with(2 * ts.nodes);
  const double scale = std::max(std::abs(fine), 1e-10 * std::max(1.0, model.variance));
  if (std::abs(fine - coarse) > ts.rel_tol * scale)
    throw quad::ConvergenceError(
        "brute_force_cov: node doubling did not converge", coarse, fine);
  return fine;
}

CovEngine::CovEngine(const SpectralModel& model, const WaveletPair& pair,
                     const QuadSpec& qs)
    : model_(model), pair_(pair), qs_(qs) {}

namespace {


uint64_t double_bits(double x) {
  uint64_t u;
  static_assert(sizeof(u) == sizeof(x));
  std::memcpy(&u, &x, sizeof(u));
  return u;
}

}  // namespace

double CovEngine::coeff(const CoefficientIndex& a,
                        const CoefficientIndex& b) const {
  using Kind = CoefficientIndex::Kind;
  // canonical order: scaling first, then by level
  const CoefficientIndex* pa = &a;
  const CoefficientIndex* pb = &b;
  const auto rank = [](const CoefficientIndex& ci) {
    return ci.kind == Kind::Scaling ? -1 : ci.j;
  };
  if (rank(*pa) > rank(*pb)) std::swap(pa, pb);
  if (supports_disjoint(pair_, *pa, *pb)) return 0.0;

  // shift-stationarity cache key, injectively packed: 4-bit class,
  // 12-bit level, 32-bit canonical shift (offset to stay nonnegative)
  const auto pack = [](uint64_t cls, uint64_t j, int canon) {
    return (cls << 60) | (j << 48) |
           static_cast<uint64_t>(static_cast<uint32_t>(canon + (1 << 30)));
  };
  uint64_t key = 0;
  bool cacheable = true;
  if (pa->kind == Kind::Scaling && pb->kind == Kind::Scaling) {
    key = pack(1, 0, std::abs(pa->k - pb->k));
  } else if (pa->kind == Kind::Scaling) {  // scaling x detail level 0
    const int d = pa->k - pb->k;
    const int canon = std::max(d, 1 - d);  // value depends on |d - 1/2|
    key = pack(2, 0, canon);
  } else if (pa->j == pb->j) {
    key = pack(3, static_cast<uint64_t>(pa->j), std::abs(pa->k - pb->k));
  } else if (pb->j == pa->j + 1) {  // adjacent levels: depends on |2(2k-l)+1|
    const int m = 2 * pa->k - pb->k;
    const int canon = (2 * m + 1 >= 0) ? m : -1 - m;
    key = pack(4, static_cast<uint64_t>(pa->j), canon);
  } else {
    cacheable = false;  // disjoint supports already returned 0 above
  }

  if (cacheable) {
    auto it = cc_cache_.find(key);
    if (it != cc_cache_.end()) return it->second;
  }
  const double v = coeff_cov(model_, pair_, *pa, *pb, qs_);
  if (cacheable) cc_cache_.emplace(key, v);
  return v;
}

double CovEngine::process_coeff(double t, const CoefficientIndex& a) const {
  using Kind = CoefficientIndex::Kind;
  // value depends on (level, t - center) only
  double s;
  uint64_t tag;
  if (a.kind == Kind::Scaling) {
    s = t - a.k;
    tag = 0;
  } else {
    s = t - (2.0 * a.k + 1.0) / std::ldexp(1.0, a.j + 1);
    tag = static_cast<uint64_t>(a.j) + 1;
  }
  const std::pair<uint64_t, uint64_t> key{tag, double_bits(std::abs(s))};
  auto it = pc_cache_.find(key);
  if (it != pc_cache_.end()) return it->second;
  const double v = process_coeff_cov(model_, pair_, t, a, qs_);
  pc_cache_.emplace(key, v);
  return v;
}

JointCovariance assemble_joint_covariance(const CovEngine& engine,
                                          const TruncationScheme& scheme,
                                          const std::vector<double>& grid) {
  scheme.validate();
  JointCovariance jc;
  for (double t : grid) jc.index.push_back({true, t, {}});
  for (const auto& ci : scheme.indices()) jc.index.push_back({false, 0.0, ci});
  const auto n = static_cast<Eigen::Index>(jc.index.size());
  if (n == 0) throw std::invalid_argument("assemble_joint_covariance: empty index");

  jc.matrix.resize(n, n);
  const auto& model = engine.model();
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = r; c < n; ++c) {
      const auto& ir = jc.index[static_cast<size_t>(r)];
      const auto& ic = jc.index[static_cast<size_t>(c)];
      double v;
      if (ir.is_grid && ic.is_grid)
        v = model.covariance(ir.t - ic.t);
      else if (ir.is_grid)
        v = engine.process_coeff(ir.t, ic.coeff);
      else if (ic.is_grid)
        v = engine.process_coeff(ic.t, ir.coeff);
      else
        v = engine.coeff(ir.coeff, ic.coeff);
      jc.matrix(r, c) = v;
      jc.matrix(c, r) = v;
    }
  }

  // Fast path: strict Cholesky. The joint matrix becomes numerically
  // singular by construction once the truncation reproduces the process on
  // the grid, so a failure here is expected rather than exceptional.
  Eigen::LLT<Eigen::MatrixXd> llt(jc.matrix);
  if (llt.info() == Eigen::Success) {
    jc.jitter = 0.0;
    jc.factor = llt.matrixL();
    return jc;
  }

  // Semidefinite repair: clamp eigenvalues that are negative by no more
  // than quadrature noise. Anything worse means inconsistent entries.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jc.matrix);
  if (es.info() != Eigen::Success)
    throw std::runtime_error(
        "assemble_joint_covariance: eigendecomposition failed");
  const double max_eig = std::max(es.eigenvalues().maxCoeff(), 0.0);
  const double min_eig = es.eigenvalues().minCoeff();
  const double tol = 1e-8 * std::max(max_eig, 1e-300);
  if (min_eig < -tol)
    throw std::runtime_error(
        "assemble_joint_covariance: covariance entries are inconsistent "
        "(eigenvalue " + std::to_string(min_eig) + " below -1e-8 * max)");
  Eigen::VectorXd clamped = es.eigenvalues().cwiseMax(0.0);
  jc.jitter = std::max(-min_eig, 0.0);
  jc.factor = es.eigenvectors() * clamped.cwiseSqrt().asDiagonal();
  return jc;
}

DecayReport decay_certificate(const CovEngine& engine,
                              const std::vector<int>& levels, int k_max,
                              double a_psi, double a1_psi, double a_phi,
                              double a1_phi) {
  DecayReport report;
  report.min_margin = std::numeric_limits<double>::infinity();

  auto push = [&](std::string id, int j, int k, int l, double actual,
                  double bound) {
    DecayEntry e;
    e.bound_id = std::move(id);
    e.j = j;
    e.k = k;
    e.l = l;
    e.actual = actual;
    e.bound = bound;
    e.margin = (actual == 0.0) ? std::numeric_limits<double>::infinity()
                               : bound / std::abs(actual);
    if (e.margin < report.min_margin) report.min_margin = e.margin;
    if (e.margin < 1.0 && report.pass) {
      report.pass = false;
      std::ostringstream msg;
      msg << e.bound_id << " violated at j=" << j << " k=" << k << " l=" << l
          << " actual=" << actual << " bound=" << bound;
      report.first_failure = msg.str();
    }
    report.entries.push_back(std::move(e));
  };

  const double pow2 = 2.0;
  for (int j : levels) {
    const double inv4j = std::pow(pow2, -4.0 * j);
    const double inv5j = std::pow(pow2, -5.0 * j);
    // diagonal: E|eta_jk|^2 (k-independent by stationarity)
    const double diag =
        engine.coeff(CoefficientIndex::detail(j, 0), CoefficientIndex::detail(j, 0));
    push("detail_diagonal", j, 0, 0, diag, a1_psi * inv5j);
    // off-diagonal classes: value depends on k - l only
    for (int d = 1; d <= 2 * k_max; ++d) {
      const double v = engine.coeff(CoefficientIndex::detail(j, d),
                                    CoefficientIndex::detail(j, 0));
      push("detail_offdiag", j, d, 0, v, a_psi * inv4j / d);
    }
  }

  const double sdiag =
      engine.coeff(CoefficientIndex::scaling(0), CoefficientIndex::scaling(0));
  push("scaling_diagonal", 0, 0, 0, sdiag, a1_phi);
  for (int d = 1; d <= 2 * k_max; ++d) {
    const double v = engine.coeff(CoefficientIndex::scaling(d),
                                  CoefficientIndex::scaling(0));
    push("scaling_offdiag", 0, d, 0, v, a_phi / d);
  }
  return report;
}

}  // namespace wavexp
