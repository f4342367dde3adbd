#include <doctest.h>

#include <cmath>

#include "wavexp/quadrature.hpp"
#include "wavexp/spectral.hpp"

using namespace wavexp;

TEST_SUITE_BEGIN("spectral");

TEST_CASE("squared exponential closed forms") {
  const auto m = make_squared_exponential(1.0, 1.0);
  CHECK(m.covariance(0.0) == doctest::Approx(1.0));
  CHECK(m.density(1.0) / m.density(0.0) ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  CHECK(eval_spectral(m, SpectralMember::RhatD1, 0.0) == doctest::Approx(0.0));

  const auto m2 = make_matern(2.5, 1.0, 1.0);
  CHECK(m2.covariance(0.0) == doctest::Approx(1.0).epsilon(1e-10));

  const auto m3 = make_squared_exponential(2.0, 0.5);
  CHECK(m3.density(0.0) ==
        doctest::Approx(2.0 * 0.5 * std::sqrt(2.0 * M_PI)).epsilon(1e-12));

  CHECK_THROWS_AS(make_squared_exponential(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_matern(2.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("spectral density integrates back to the variance") {
  for (const auto& m :
       {make_squared_exponential(1.0, 1.0), make_matern(2.5, 1.5, 0.8)}) {
    const double Z = m.tail_cutoff(1e-10);
    const double total =
        quad::integrate_adaptive([&](double z) { return m.density(z); }, 0.0,
                                 Z, 1e-10, 1e-14) /
        M_PI;
    CHECK(total == doctest::Approx(m.variance).epsilon(1e-6));
  }
}

TEST_CASE("covariance is the Fourier transform of the density") {
  for (const auto& m :
       {make_squared_exponential(1.0, 1.0), make_matern(3.5, 2.0, 1.3)}) {
    const double Z = m.tail_cutoff(1e-9);
    for (int i = 0; i < 64; ++i) {
      const double tau = 10.0 * i / 63.0;
      const double via_density =
          quad::integrate(
              [&](double z) { return m.density(z) * std::cos(tau * z); }, 0.0,
              Z, std::min(0.15, Z / 512.0), 24) /
          M_PI;
      CHECK(via_density ==
            doctest::Approx(m.covariance(tau)).epsilon(1e-6).scale(m.variance));
    }
  }
}

TEST_CASE("condition report passes for the catalog models") {
  for (const auto& m :
       {make_squared_exponential(1.0, 1.0), make_matern(2.5, 1.0, 1.0),
        make_zero()}) {
    const auto report = check_spectral_conditions(m, 64.0, 1e-10);
    CHECK(report.all_pass());
  }
}

TEST_CASE("cauchy-type density fails the fourth-moment condition") {
  SpectralModel m;
  m.kernel = "cauchy";
  m.variance = 1.0;
  m.covariance = [](double tau) { return std::exp(-std::abs(tau)); };
  m.density = [](double z) { return 2.0 / (1.0 + z * z); };
  m.density_d1 = [](double z) {
    const double d = 1.0 + z * z;
    return -4.0 * z / (d * d);
  };
  m.tail_cutoff = [](double rel) { return 2.0 / rel; };
  const auto report = check_spectral_conditions(m, 64.0, 1e-10);
  CHECK(!report.all_pass());
  const auto* e = report.find("cond6_int_density_z4");
  REQUIRE(e != nullptr);
  CHECK(e->verdict == Verdict::Fail);
}

TEST_SUITE_END();
