#include <doctest.h>

#include <cmath>
#include <complex>

#include "wavexp/quadrature.hpp"
#include "wavexp/rng.hpp"
#include "wavexp/wavelet.hpp"

using namespace wavexp;

namespace {
const WaveletPair& meyer3() {
  static const WaveletPair pair = WaveletPair::build_meyer(3);
  return pair;
}
}  // namespace

TEST_SUITE_BEGIN("wavelet");

TEST_CASE("aux_order below 3 is rejected") {
  CHECK_THROWS_AS(WaveletPair::build_meyer(2), std::invalid_argument);
}

TEST_CASE("phi_hat closed-form anchor values") {
  const auto& p = meyer3();
  CHECK(std::abs(p.phi_hat().eval(0.0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(p.phi_hat().eval(10.0, 0)) == 0.0);
  const double at_pi = std::abs(p.phi_hat().eval(M_PI, 0));
  CHECK(at_pi > 0.0);
  CHECK(at_pi < 1.0);
  // taper value at pi from the auxiliary polynomial directly:
  // nu(3*pi/(2*pi) - 1) = nu(1/2) = 1/2, so phi_hat(pi) = cos(pi/4)
  CHECK(at_pi == doctest::Approx(std::cos(M_PI / 4.0)).epsilon(1e-12));
}

TEST_CASE("psi_hat vanishes at and around zero") {
  const auto& p = meyer3();
  CHECK(std::abs(p.psi_hat().eval(0.0, 0)) == 0.0);
  CHECK(std::abs(p.psi_hat().eval(0.0, 1)) == 0.0);
  CHECK(std::abs(p.psi_hat().eval(2.0, 0)) == 0.0);  // 2 < 2*pi/3
  CHECK(std::abs(p.psi_hat().eval(9.0, 0)) == 0.0);  // 9 > 8*pi/3
}

TEST_CASE("partition of unity at 1024 points") {
  const auto& p = meyer3();
  double worst = 0.0;
  for (int i = 0; i < 1024; ++i) {
    const double y = -M_PI + 2.0 * M_PI * (i + 0.5) / 1024.0;
    double s = 0.0;
    for (int k = -2; k <= 2; ++k) {
      const double v = std::abs(p.phi_hat().eval(y + 2.0 * M_PI * k, 0));
      s += v * v;
    }
    worst = std::max(worst, std::abs(s - 1.0));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("frequency derivatives match finite differences") {
  const auto& p = meyer3();
  NormalStream rng(7, 0);
  const double h = 1e-5;
  int checked = 0;
  while (checked < 256) {
    const double z = 0.1 + rng.next_uniform() * 9.0;
    // skip junction neighborhoods of the piecewise definition
    bool near_junction = false;
    for (double kj : {2.0 * M_PI / 3.0, 4.0 * M_PI / 3.0, 8.0 * M_PI / 3.0})
      if (std::abs(z - kj) < 1e-3 || std::abs(z + kj) < 1e-3)
        near_junction = true;
    if (near_junction) continue;
    ++checked;
    for (bool psi_side : {false, true}) {
      const auto& form = psi_side ? p.psi_hat() : p.phi_hat();
      const auto fd =
          (form.eval(z + h, 0) - form.eval(z - h, 0)) / (2.0 * h);
      const auto d1 = form.eval(z, 1);
      const double scale = std::max(std::abs(d1), 1e-3);
      CHECK(std::abs(fd - d1) / scale < 1e-6);
      const auto fd2 =
          (form.eval(z + h, 1) - form.eval(z - h, 1)) / (2.0 * h);
      const auto d2 = form.eval(z, 2);
      CHECK(std::abs(fd2 - d2) / std::max(std::abs(d2), 1e-3) < 1e-5);
    }
  }
}

TEST_CASE("time-domain dilation identity") {
  const auto& p = meyer3();
  for (double t : {-3.7, -0.2, 0.4, 1.9, 5.5}) {
    const double lhs = p.eval_time(TimeMember::Psi, {2, 3}, t);
    const double rhs = 2.0 * p.eval_time(TimeMember::Psi, {0, 0}, 4.0 * t - 3.0);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
  }
  for (int j : {1, 3, 6}) {
    for (int k : {-64, -5, 17, 64}) {
      const double t = 0.3;
      const double lhs = p.eval_time(TimeMember::Phi, {j, k}, t);
      const double rhs = std::pow(2.0, 0.5 * j) *
                         p.eval_time(TimeMember::Phi, {0, 0},
                                     std::ldexp(t, j) - k);
      CHECK(std::abs(lhs - rhs) < 1e-8);
    }
  }
}

TEST_CASE("phi is even in time") {
  const auto& p = meyer3();
  for (double t : {0.3, 1.1, 2.7, 8.4, 19.0})
    CHECK(p.eval_time(TimeMember::Phi, {0, 0}, -t) ==
          doctest::Approx(p.eval_time(TimeMember::Phi, {0, 0}, t))
              .epsilon(1e-9));
}

TEST_CASE("orthonormality spot checks by time quadrature") {
  const auto& p = meyer3();
  auto inner = [&](DyadicIndex a, DyadicIndex b) {
    return quad::integrate(
        [&](double t) {
          return p.eval_time(TimeMember::Psi, a, t) *
                 p.eval_time(TimeMember::Psi, b, t);
        },
        -40.0, 40.0, 0.125, 16);
  };
  CHECK(std::abs(inner({0, 0}, {0, 1})) < 1e-6);
  CHECK(std::abs(inner({0, 0}, {1, 0})) < 1e-6);
  CHECK(inner({0, 0}, {0, 0}) == doctest::Approx(1.0).epsilon(1e-4));
  const double phi_norm = quad::integrate(
      [&](double t) {
        const double v = p.eval_time(TimeMember::Phi, {0, 0}, t);
        return v * v;
      },
      -40.0, 40.0, 0.125, 16);
  CHECK(phi_norm == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("fitted envelopes dominate and decay at the expected order") {
  const auto& p = meyer3();
  const auto env = fit_envelope(p, TimeMember::Psi, 40.0);
  CHECK(env.exponent == doctest::Approx(4.0));
  for (int i = 0; i < 10000; ++i) {
    const double t = 40.0 * i / 9999.0;
    CHECK(std::abs(p.eval_time(TimeMember::Psi, {0, 0}, t)) <=
          env.amplitude / std::pow(1.0 + t, env.exponent) + 1e-14);
  }
  // far-field log-log slope must be at least as steep as the envelope
  // exponent (measured decay is in fact about one order faster)
  const auto peak_at = [&](double lo) {
    double best = 0.0;
    for (double t = lo; t < lo + 4.0; t += 0.01)
      best = std::max(best,
                      std::abs(p.eval_time(TimeMember::Psi, {0, 0}, t)));
    return best;
  };
  const double p1 = peak_at(8.0), p2 = peak_at(32.0);
  const double slope = std::log(p2 / p1) / std::log(34.0 / 10.0);
  CHECK(slope < -3.5);
}

TEST_CASE("deterministic expansion of catalog functions") {
  const auto& p = meyer3();
  const auto grid = [] {
    std::vector<double> g;
    for (int i = 0; i <= 128; ++i) g.push_back(10.0 * i / 128.0);
    return g;
  }();

  FunctionSpec zero;
  const auto rz = deterministic_expand(p, zero,
                                       TruncationScheme::uniform(2, 8, 8), grid);
  CHECK(rz.coeff_energy == 0.0);
  CHECK(rz.l2_error == 0.0);

  FunctionSpec bump;
  bump.kind = FunctionSpec::Kind::GaussianBump;
  bump.center = 5.0;
  bump.width = 1.0;
  const auto coarse = deterministic_expand(
      p, bump, TruncationScheme::uniform(2, 8, 8), grid);
  const auto fine = deterministic_expand(
      p, bump, TruncationScheme::uniform(5, 64, 64), grid);
  CHECK(fine.l2_error < coarse.l2_error);
  CHECK(fine.coeff_energy <= bump.l2_norm_squared() + 1e-8);
  CHECK(coarse.coeff_energy <= bump.l2_norm_squared() + 1e-8);
  CHECK(bump.l2_norm_squared() - fine.coeff_energy <
        bump.l2_norm_squared() - coarse.coeff_energy + 1e-12);
}

TEST_SUITE_END();
