#include <doctest.h>

#include <cmath>

#include "wavexp/admissibility.hpp"
#include "wavexp/rng.hpp"

using namespace wavexp;

TEST_SUITE_BEGIN("admissibility");

TEST_CASE("wavelet conditions pass for the standard pair") {
  const auto pair = WaveletPair::build_meyer(3);
  const auto report = check_wavelet_conditions(pair, 0.4, 0.75);
  CHECK(report.all_pass());
  CHECK_THROWS_AS(check_wavelet_conditions(pair, 0.6, 0.75),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_wavelet_conditions(pair, 0.4, 0.4),
                  std::invalid_argument);
  // decay-at-infinity diagnostic: exact zero outside compact support
  const auto* e = report.find("cond3_decay_at_infinity");
  REQUIRE(e != nullptr);
  REQUIRE(!e->diagnostics.empty());
  CHECK(e->diagnostics.front() == 0.0);
}

TEST_CASE("sigma_inverse analytic anchors and round trips") {
  ModulusSpec ident{ModulusSpec::Family::Power, 1.0, 1.0, 10.0};
  CHECK(sigma_inverse(ident, 0.5) == doctest::Approx(0.5).epsilon(1e-12));

  ModulusSpec sq{ModulusSpec::Family::Power, 2.0, 0.5, 10.0};
  CHECK(sigma_inverse(sq, 1.0) == doctest::Approx(0.25).epsilon(1e-10));

  ModulusSpec log1{ModulusSpec::Family::Log, 1.0, 1.0, 10.0};
  CHECK(log1.sigma(sigma_inverse(log1, 0.2)) ==
        doctest::Approx(0.2).epsilon(1e-12));

  CHECK_THROWS_AS(sigma_inverse(log1, 1e6), std::domain_error);

  NormalStream rng(11, 0);
  for (int i = 0; i < 100; ++i) {
    ModulusSpec spec{i % 2 ? ModulusSpec::Family::Log
                           : ModulusSpec::Family::Power,
                     0.5 + rng.next_uniform(),
                     i % 2 ? 0.6 + 0.4 * rng.next_uniform()
                           : 0.1 + 0.8 * rng.next_uniform(),
                     10.0};
    const double u = spec.sigma(10.0) * (0.01 + 0.98 * rng.next_uniform());
    CHECK(spec.sigma(sigma_inverse(spec, u)) ==
          doctest::Approx(u).epsilon(1e-11));
  }
}

TEST_CASE("entropy integral verdicts for the example families") {
  auto verdict = [](ModulusSpec::Family fam, double c, double e) {
    ModulusSpec spec{fam, c, e, 10.0};
    return entropy_integral(spec, 0.5 * spec.sigma(10.0)).verdict;
  };
  CHECK(verdict(ModulusSpec::Family::Power, 1.0, 0.5) ==
        IntegralVerdict::Converges);
  CHECK(verdict(ModulusSpec::Family::Log, 1.0, 0.75) ==
        IntegralVerdict::Converges);
  CHECK(verdict(ModulusSpec::Family::Log, 1.0, 0.4) ==
        IntegralVerdict::Diverges);
  // amplitude invariance
  CHECK(verdict(ModulusSpec::Family::Log, 0.1, 0.75) ==
        IntegralVerdict::Converges);
  CHECK(verdict(ModulusSpec::Family::Log, 10.0, 0.75) ==
        IntegralVerdict::Converges);
  CHECK(verdict(ModulusSpec::Family::Log, 0.1, 0.4) ==
        IntegralVerdict::Diverges);
  CHECK(verdict(ModulusSpec::Family::Log, 10.0, 0.4) ==
        IntegralVerdict::Diverges);
  CHECK(verdict(ModulusSpec::Family::Power, 0.1, 0.5) ==
        IntegralVerdict::Converges);
  CHECK(verdict(ModulusSpec::Family::Power, 10.0, 0.5) ==
        IntegralVerdict::Converges);
}

TEST_CASE("log-family verdict flips once near one half") {
  auto diverges = [](double a) {
    ModulusSpec spec{ModulusSpec::Family::Log, 1.0, a, 10.0};
    return entropy_integral(spec, 0.5 * spec.sigma(10.0)).verdict ==
           IntegralVerdict::Diverges;
  };
  double lo = 0.3, hi = 0.8;
  REQUIRE(diverges(lo));
  REQUIRE(!diverges(hi));
  while (hi - lo > 0.01) {
    const double mid = 0.5 * (lo + hi);
    (diverges(mid) ? lo : hi) = mid;
  }
  CHECK(std::abs(0.5 * (lo + hi) - 0.5) < 0.05);
}

TEST_SUITE_END();
