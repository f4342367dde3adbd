#include <doctest.h>

#include <cmath>
#include <complex>

#include "wavexp/quadrature.hpp"

using namespace wavexp;

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("gauss-legendre rule integrates polynomials exactly") {
  const auto& rule = quad::gauss_legendre(8);
  double s = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i)
    s += rule.weights[i] * std::pow(rule.nodes[i], 14);
  CHECK(s == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
}

TEST_CASE("composite integration of a smooth oscillatory function") {
  const double v =
      quad::integrate([](double x) { return std::cos(7.0 * x); }, 0.0, 3.0,
                      0.25, 24);
  CHECK(v == doctest::Approx(std::sin(21.0) / 7.0).epsilon(1e-12));
}

TEST_CASE("checked integration flags under-resolution") {
  CHECK_THROWS_AS(quad::integrate_checked(
                      [](double x) { return std::cos(400.0 * x); }, 0.0, 10.0,
                      5.0, 4, 1e-10),
                  quad::ConvergenceError);
}

TEST_CASE("complex integration returns matching real part") {
  const auto v = quad::integrate_checked_complex(
      [](double x) {
        return std::exp(std::complex<double>(0.0, x));
      },
      -1.0, 1.0, 0.5, 16, 1e-10);
  CHECK(v.real() == doctest::Approx(2.0 * std::sin(1.0)).epsilon(1e-12));
  CHECK(std::abs(v.imag()) < 1e-14);
}

TEST_CASE("adaptive integration handles fractional endpoint powers") {
  // int_0^1 x^0.4 dx = 1/1.4
  const double v = quad::integrate_adaptive(
      [](double x) { return std::pow(x, 0.4); }, 0.0, 1.0, 1e-12, 1e-15);
  CHECK(v == doctest::Approx(1.0 / 1.4).epsilon(1e-9));
}

TEST_SUITE_END();
