// Acceptance harness: one line per criterion, PASS/FAIL, nonzero exit when
// any criterion fails. Tolerances are pinned here on purpose; do not import
// them from config.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "wavexp/admissibility.hpp"
#include "wavexp/coeff_cov.hpp"
#include "wavexp/constants.hpp"
#include "wavexp/io.hpp"
#include "wavexp/quadrature.hpp"
#include "wavexp/rng.hpp"
#include "wavexp/sampler.hpp"
#include "wavexp/wavelet.hpp"

using namespace wavexp;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(double x) { return io::format_double(x); }

const WaveletPair& meyer3() {
  static const WaveletPair pair = WaveletPair::build_meyer(3);
  return pair;
}

const SpectralModel& se11() {
  static const SpectralModel m = make_squared_exponential(1.0, 1.0);
  return m;
}

CovEngine& engine() {
  static CovEngine e(se11(), meyer3());
  return e;
}

const ConstantsLedger& ledger() {
  static const ConstantsLedger led =
      compute_constants(meyer3(), se11(), 0.75, 0.4, 10.0);
  return led;
}

std::vector<TruncationScheme> schedule() {
  return {TruncationScheme::uniform(1, 8, 8),
          TruncationScheme::uniform(2, 16, 16),
          TruncationScheme::uniform(4, 32, 32),
          TruncationScheme::uniform(6, 64, 64)};
}

// 1. partition of unity over y in [-pi, pi], 1024 points, < 1e-10
void criterion1() {
  double worst = 0.0;
  for (int i = 0; i < 1024; ++i) {
    const double y = -M_PI + 2.0 * M_PI * (i + 0.5) / 1024.0;
    double s = 0.0;
    for (int k = -2; k <= 2; ++k) {
      const double v = std::abs(meyer3().phi_hat().eval(y + 2.0 * M_PI * k, 0));
      s += v * v;
    }
    worst = std::max(worst, std::abs(s - 1.0));
  }
  report(1, worst < 1e-10, "partition of unity, max |sum - 1| = " + fmt(worst));
}

// 2. orthonormality spot checks by time-domain quadrature
void criterion2() {
  auto inner = [&](DyadicIndex a, DyadicIndex b, TimeMember m) {
    return quad::integrate(
        [&](double t) {
          return meyer3().eval_time(m, a, t) * meyer3().eval_time(m, b, t);
        },
        -40.0, 40.0, 0.125, 16);
  };
  const double psi_01 = std::abs(inner({0, 0}, {0, 1}, TimeMember::Psi));
  const double psi_10 = std::abs(inner({0, 0}, {1, 0}, TimeMember::Psi));
  const double psi_nn = inner({0, 0}, {0, 0}, TimeMember::Psi);
  const double phi_nn = inner({0, 0}, {0, 0}, TimeMember::Phi);
  const bool pass = psi_01 < 1e-6 && psi_10 < 1e-6 &&
                    std::abs(psi_nn - 1.0) < 1e-4 &&
                    std::abs(phi_nn - 1.0) < 1e-4;
  report(2, pass,
         "orthonormality: <psi00,psi01> = " + fmt(psi_01) +
             ", <psi00,psi10> = " + fmt(psi_10) + ", |psi|^2 = " + fmt(psi_nn) +
             ", |phi|^2 = " + fmt(phi_nn));
}

// 3. Parseval vs brute force on 10 random overlapping pairs, rel < 1e-5.
// Pairs with disjoint frequency supports are redrawn: both routes agree
// there by construction (exact zero vs quadrature residue) and a relative
// comparison is ill-posed.
void criterion3() {
  NormalStream rng(2718, 0xacc3);
  auto draw_index = [&]() {
    const bool scaling = rng.next_uniform() < 0.25;
    const int k = static_cast<int>(rng.next_uniform() * 9.0) - 4;
    if (scaling) return CoefficientIndex::scaling(k);
    const int j = static_cast<int>(rng.next_uniform() * 4.0);
    return CoefficientIndex::detail(j, k);
  };
  double worst_rel = 0.0;
  int done = 0;
  while (done < 10) {
    const auto a = draw_index();
    const auto b = draw_index();
    if (supports_disjoint(meyer3(), a, b)) continue;
    const double freq = coeff_cov(se11(), meyer3(), a, b);
    const double time = brute_force_cov(se11(), meyer3(), a, b);
    const double scale = std::max({std::abs(freq), std::abs(time), 1e-12});
    worst_rel = std::max(worst_rel, std::abs(freq - time) / scale);
    ++done;
  }
  report(3, worst_rel < 1e-5,
         "parseval vs brute force, 10 pairs, worst rel = " + fmt(worst_rel));
}

// 4. decay certificates for j in 0..5, |k|,|l| <= 32, margin >= 1
void criterion4() {
  const auto& led = ledger();
  const auto rep = decay_certificate(engine(), {0, 1, 2, 3, 4, 5}, 32,
                                     led.a_psi, led.a1_psi, led.a_phi,
                                     led.a1_phi);
  report(4, rep.pass && rep.min_margin >= 1.0,
         "decay certificates, min margin = " + fmt(rep.min_margin) +
             (rep.pass ? "" : ", first failure: " + rep.first_failure));
}

// 5. cross-level sparsity: exact zero for |j-j'| >= 2, brute force < 1e-10
void criterion5() {
  const std::pair<CoefficientIndex, CoefficientIndex> pairs[5] = {
      {CoefficientIndex::detail(0, 0), CoefficientIndex::detail(2, 0)},
      {CoefficientIndex::detail(0, 1), CoefficientIndex::detail(3, -2)},
      {CoefficientIndex::detail(1, -3), CoefficientIndex::detail(3, 4)},
      {CoefficientIndex::detail(0, -4), CoefficientIndex::detail(4, 1)},
      {CoefficientIndex::detail(2, 2), CoefficientIndex::detail(4, -1)}};
  bool exact = true;
  double worst_bf = 0.0;
  for (const auto& [a, b] : pairs) {
    exact = exact && coeff_cov(se11(), meyer3(), a, b) == 0.0;
    worst_bf = std::max(worst_bf,
                        std::abs(brute_force_cov(se11(), meyer3(), a, b)));
  }
  report(5, exact && worst_bf < 1e-10,
         std::string("cross-level sparsity, exact zeros: ") +
             (exact ? "yes" : "no") + ", worst brute force = " + fmt(worst_bf));
}

// 6. mean-square convergence witness on 33 points of [0, 10]
void criterion6() {
  const auto grid = uniform_grid(0.0, 10.0, 33);
  auto max_mse = [&](const TruncationScheme& s) {
    double m = 0.0;
    for (double t : grid) m = std::max(m, pointwise_mse(engine(), s, t));
    return m;
  };
  const double coarse = max_mse(TruncationScheme::uniform(1, 8, 8));
  const double fine = max_mse(TruncationScheme::uniform(6, 64, 64));
  const double r0 = se11().covariance(0.0);
  const bool pass = fine < 0.01 * r0 && fine < coarse / 10.0;
  report(6, pass,
         "mean-square convergence, max MSE(6,64) = " + fmt(fine) +
             ", max MSE(1,8) = " + fmt(coarse) + ", R(0) = " + fmt(r0));
}

// 7. modulus-of-continuity bound, 200 random pairs, all schemes, margin >= 1
void criterion7() {
  NormalStream rng(31415, 0x300d);
  std::vector<std::pair<double, double>> pairs;
  for (int i = 0; i < 200; ++i)
    pairs.emplace_back(10.0 * rng.next_uniform(), 10.0 * rng.next_uniform());
  const auto rep = verify_modulus_bound(engine(), schedule(), ledger(), pairs);
  report(7, rep.pass && rep.min_margin >= 1.0,
         "modulus bound, 200 pairs x 4 schemes, min margin = " +
             fmt(rep.min_margin));
}

// 8. elementary inequalities, 1e5 samples, zero violations
void criterion8() {
  const auto rep = verify_elementary_inequalities(0.75, 10.0, 100000, 161803);
  report(8, rep.pass && rep.violations == 0,
         "elementary inequalities, violations = " +
             std::to_string(rep.violations) +
             ", max ratio = " + fmt(rep.max_ratio));
}

// 9. entropy integral verdicts and the LOG-family flip point
void criterion9() {
  auto verdict = [](ModulusSpec::Family fam, double c, double expo) {
    ModulusSpec spec{fam, c, expo, 10.0};
    return entropy_integral(spec, 0.5).verdict;
  };
  const bool fixed =
      verdict(ModulusSpec::Family::Power, 1.0, 0.5) ==
          IntegralVerdict::Converges &&
      verdict(ModulusSpec::Family::Log, 1.0, 0.75) ==
          IntegralVerdict::Converges &&
      verdict(ModulusSpec::Family::Log, 1.0, 0.4) == IntegralVerdict::Diverges;

  double lo = 0.3, hi = 0.8;  // diverges at lo, converges at hi
  for (int i = 0; i < 40 && hi - lo > 1e-4; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (verdict(ModulusSpec::Family::Log, 1.0, mid) ==
        IntegralVerdict::Converges)
      hi = mid;
    else
      lo = mid;
  }
  const double flip = 0.5 * (lo + hi);
  const bool pass = fixed && std::abs(flip - 0.5) <= 0.05;
  report(9, pass,
         std::string("entropy verdicts ") + (fixed ? "ok" : "WRONG") +
             ", LOG flip at alpha = " + fmt(flip));
}

// 10. uniform-convergence Monte Carlo: p_hat strictly decreasing along the
// schedule, final upper CI < 0.05
void criterion10() {
  const auto grid = uniform_grid(0.0, 10.0, 257);
  const double eps = 0.5 * std::sqrt(se11().covariance(0.0));
  std::vector<double> p_hats;
  double final_ci_hi = 1.0;
  std::string seq;
  for (const auto& s : schedule()) {
    const auto est = sup_exceedance(engine(), s, grid, eps, 2000, 1);
    p_hats.push_back(est.p_hat);
    final_ci_hi = est.ci_hi;
    if (!seq.empty()) seq += ", ";
    seq += fmt(est.p_hat);
  }
  bool strict = true;
  for (size_t i = 1; i < p_hats.size(); ++i)
    strict = strict && p_hats[i] < p_hats[i - 1];
  const bool pass = strict && final_ci_hi < 0.05;
  report(10, pass,
         "sup exceedance p_hat = [" + seq + "], final upper CI = " +
             fmt(final_ci_hi) + (strict ? "" : " (not strictly decreasing)"));
}

// 11. determinism: identical seeds give byte-identical CSV text from
// independently constructed engines
void criterion11() {
  auto render = [&]() {
    CovEngine fresh(se11(), meyer3());
    const auto grid = uniform_grid(0.0, 10.0, 17);
    io::CsvTable t;
    t.header = {"n", "k", "eps", "p_hat", "ci_lo", "ci_hi", "replicates",
                "seed"};
    for (const auto& s :
         {TruncationScheme::uniform(1, 8, 8), TruncationScheme::uniform(2, 16, 16)}) {
      const auto est = sup_exceedance(fresh, s, grid, 0.5, 200, 7);
      t.rows.push_back({std::to_string(s.n), std::to_string(s.k0),
                        fmt(0.5), fmt(est.p_hat), fmt(est.ci_lo),
                        fmt(est.ci_hi), std::to_string(est.replicates),
                        std::to_string(est.seed)});
    }
    io::CsvTable m;
    m.header = {"n", "k", "t", "mse"};
    for (double t2 : grid)
      m.rows.push_back({"1", "8", fmt(t2),
                        fmt(pointwise_mse(fresh, TruncationScheme::uniform(1, 8, 8), t2))});
    return t.to_string() + m.to_string();
  };
  const std::string a = render();
  const std::string b = render();
  report(11, a == b,
         a == b ? "rerun outputs byte-identical (sha256 " +
                      io::sha256_hex(a).substr(0, 12) + ")"
                : "rerun outputs differ");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  if (failures > 0) {
    std::printf("%d criteria FAILED\n", failures);
    return 1;
  }
  std::printf("all criteria PASS\n");
  return 0;
}
