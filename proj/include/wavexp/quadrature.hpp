#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wavexp::quad {

/// Gauss-Legendre rule on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Returns the cached n-point Gauss-Legendre rule.
const Rule& gauss_legendre(int n);

/// Thrown when two quadrature refinement levels disagree beyond tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double coarse, double fine)
      : std::runtime_error(what), coarse_value(coarse), fine_value(fine) {}
  double coarse_value;
  double fine_value;
};

/// Composite Gauss-Legendre over [a, b] with panels of at most panel_width.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double panel_width, int nodes = 32);

std::complex<double> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double panel_width, int nodes = 32);

/// Same as integrate(), but reruns with doubled node count and throws
/// ConvergenceError if the two values disagree by more than
/// rel_tol * max(|fine|, abs_floor).
double integrate_checked(const std::function<double(double)>& f, double a,
                         double b, double panel_width, int nodes,
                         double rel_tol, double abs_floor = 1e-14);

std::complex<double> integrate_checked_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double panel_width, int nodes, double rel_tol, double abs_floor = 1e-14);

/// Adaptive bisection with an embedded 15/31-point pair. Handles integrands
/// with mild endpoint singularities (fractional powers of smooth zeros).
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol = 1e-10,
                          double abs_tol = 1e-14, int max_depth = 48);

}  // namespace wavexp::quad
