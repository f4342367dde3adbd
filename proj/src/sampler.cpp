#include "wavexp/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wavexp/rng.hpp"

namespace wavexp {

std::vector<double> uniform_grid(double lo, double hi, size_t points) {
  if (points == 0) return {};
  if (points == 1) return {lo};
  std::vector<double> g(points);
  const double h = (hi - lo) / static_cast<double>(points - 1);
  for (size_t i = 0; i < points; ++i) g[i] = lo + h * static_cast<double>(i);
  g.back() = hi;
  return g;
}

std::vector<std::vector<double>> sample_joint(const JointCovariance& cov,
                                              uint64_t seed,
                                              size_t replicates) {
  const auto n = cov.matrix.rows();
  const Eigen::MatrixXd& L = cov.factor;
  std::vector<std::vector<double>> out;
  out.reserve(replicates);
  Eigen::VectorXd g(n), x(n);
  for (size_t r = 0; r < replicates; ++r) {
    NormalStream stream(seed, r);
    for (Eigen::Index i = 0; i < n; ++i) g[i] = stream.next_normal();
    x.noalias() = L * g;
    out.emplace_back(x.data(), x.data() + n);
  }
  return out;
}

std::vector<double> reconstruct(const WaveletPair& pair,
                                const TruncationScheme& scheme,
                                const std::vector<double>& coefficients,
                                const std::vector<double>& grid) {
  const auto idx = scheme.indices();
  if (coefficients.size() != idx.size()) {
    std::ostringstream msg;
    msg << "reconstruct: coefficient vector has " << coefficients.size()
        << " entries, scheme expects " << idx.size();
    throw std::invalid_argument(msg.str());
  }
  std::vector<double> out(grid.size(), 0.0);
  for (size_t a = 0; a < idx.size(); ++a) {
    const double c = coefficients[a];
    if (c == 0.0) continue;
    for (size_t i = 0; i < grid.size(); ++i)
      out[i] += c * pair.eval_time(idx[a], grid[i]);
  }
  return out;
}

double pointwise_mse(const CovEngine& engine, const TruncationScheme& scheme,
                     double t) {
  const auto idx = scheme.indices();
  const auto& pair = engine.pair();
  const size_t n = idx.size();
  std::vector<double> w(n), p(n);
  for (size_t a = 0; a < n; ++a) {
    w[a] = pair.eval_time(idx[a], t);
    p[a] = engine.process_coeff(t, idx[a]);
  }
  double mse = engine.model().variance;
  for (size_t a = 0; a < n; ++a) {
    if (w[a] == 0.0) continue;
    mse -= 2.0 * w[a] * p[a];
    mse += w[a] * w[a] * engine.coeff(idx[a], idx[a]);
    for (size_t b = a + 1; b < n; ++b) {
      if (w[b] == 0.0) continue;
      mse += 2.0 * w[a] * w[b] * engine.coeff(idx[a], idx[b]);
    }
  }
  const double floor = -1e-8 * std::max(1.0, engine.model().variance);
  if (mse < floor) {
    std::ostringstream msg;
    msg << "pointwise_mse: value " << mse
        << " is negative beyond tolerance; covariance entries inconsistent";
    throw std::runtime_error(msg.str());
  }
  return std::max(mse, 0.0);
}

void wilson_interval(size_t successes, size_t trials, double& lo, double& hi) {
  if (trials == 0) {
    lo = 0.0;
    hi = 1.0;
    return;
  }
  const double z = 1.959963984540054;  // 97.5% normal quantile
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // at the boundary counts center - half is analytically exact; do not let
  // rounding residue leak a spurious open endpoint
  lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
  hi = successes == trials ? 1.0 : std::min(1.0, center + half);
}

namespace {

size_t count_exceedances(const CovEngine& engine,
                         const TruncationScheme& scheme,
                         const std::vector<double>& grid, double eps,
                         size_t replicates, uint64_t seed) {
  const auto jc = assemble_joint_covariance(engine, scheme, grid);
  const size_t m = grid.size();
  const auto idx = scheme.indices();
  const auto& pair = engine.pair();

  // Basis matrix: W(i, a) = w_a(t_i).
  Eigen::MatrixXd W(static_cast<Eigen::Index>(m),
                    static_cast<Eigen::Index>(idx.size()));
  for (size_t i = 0; i < m; ++i)
    for (size_t a = 0; a < idx.size(); ++a)
      W(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) =
          pair.eval_time(idx[a], grid[i]);

  const Eigen::MatrixXd& L = jc.factor;
  const auto dim = jc.matrix.rows();
  size_t hits = 0;
  Eigen::VectorXd g(dim), x(dim);
  for (size_t r = 0; r < replicates; ++r) {
    NormalStream stream(seed, r);
    for (Eigen::Index i = 0; i < dim; ++i) g[i] = stream.next_normal();
    x.noalias() = L * g;
    const auto proc = x.head(static_cast<Eigen::Index>(m));
    const auto coef = x.tail(static_cast<Eigen::Index>(idx.size()));
    const double sup = (proc - W * coef).cwiseAbs().maxCoeff();
    if (sup > eps) ++hits;
  }
  return hits;
}

}  // namespace

ExceedanceEstimate sup_exceedance(const CovEngine& engine,
                                  const TruncationScheme& scheme,
                                  const std::vector<double>& grid, double eps,
                                  size_t replicates, uint64_t seed) {
  if (replicates < 100)
    throw std::invalid_argument("sup_exceedance: need >= 100 replicates");
  if (grid.size() < 2)
    throw std::invalid_argument("sup_exceedance: need >= 2 grid points");

  ExceedanceEstimate est;
  est.replicates = replicates;
  est.seed = seed;
  const size_t hits =
      count_exceedances(engine, scheme, grid, eps, replicates, seed);
  est.p_hat = static_cast<double>(hits) / static_cast<double>(replicates);
  wilson_interval(hits, replicates, est.ci_lo, est.ci_hi);

  const auto dense = uniform_grid(grid.front(), grid.back(),
                                  2 * grid.size() - 1);
  const size_t dense_hits =
      count_exceedances(engine, scheme, dense, eps, replicates, seed);
  est.p_hat_doubled_grid =
      static_cast<double>(dense_hits) / static_cast<double>(replicates);
  return est;
}

std::vector<PathSample> sample_paths(const CovEngine& engine,
                                     const TruncationScheme& scheme,
                                     const std::vector<double>& grid,
                                     uint64_t seed, size_t replicates) {
  const auto jc = assemble_joint_covariance(engine, scheme, grid);
  const auto draws = sample_joint(jc, seed, replicates);
  const size_t m = grid.size();
  std::vector<PathSample> out;
  out.reserve(replicates);
  for (const auto& v : draws) {
    PathSample s;
    s.seed = seed;
    s.grid = grid;
    s.process.assign(v.begin(), v.begin() + static_cast<long>(m));
    s.coefficients.assign(v.begin() + static_cast<long>(m), v.end());
    s.reconstruction = reconstruct(engine.pair(), scheme, s.coefficients, grid);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace wavexp
