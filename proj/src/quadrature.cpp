#include "wavexp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace wavexp::quad {

namespace {

Rule compute_rule(int n) {
  // Newton iteration on Legendre polynomials, symmetric nodes.
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  static std::map<int, Rule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double panel_width, int nodes) {
  if (b <= a) return 0.0;
  const Rule& rule = gauss_legendre(nodes);
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / panel_width)));
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    double sum = 0.0;
    for (int i = 0; i < nodes; ++i)
      sum += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    total += 0.5 * h * sum;
  }
  return total;
}

std::complex<double> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double panel_width, int nodes) {
  if (b <= a) return {0.0, 0.0};
  const Rule& rule = gauss_legendre(nodes);
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / panel_width)));
  const double h = (b - a) / panels;
  std::complex<double> total{0.0, 0.0};
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    std::complex<double> sum{0.0, 0.0};
    for (int i = 0; i < nodes; ++i)
      sum += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    total += 0.5 * h * sum;
  }
  return total;
}

double integrate_checked(const std::function<double(double)>& f, double a,
                         double b, double panel_width, int nodes,
                         double rel_tol, double abs_floor) {
  const double coarse = integrate(f, a, b, panel_width, nodes);
  const double fine = integrate(f, a, b, panel_width, 2 * nodes);
  const double scale = std::max(std::abs(fine), abs_floor);
  if (std::abs(fine - coarse) > rel_tol * scale)
    throw ConvergenceError("quadrature did not converge under node doubling",
                           coarse, fine);
  return fine;
}

std::complex<double> integrate_checked_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double panel_width, int nodes, double rel_tol, double abs_floor) {
  const auto coarse = integrate_complex(f, a, b, panel_width, nodes);
  const auto fine = integrate_complex(f, a, b, panel_width, 2 * nodes);
  const double scale = std::max(std::abs(fine), abs_floor);
  if (std::abs(fine - coarse) > rel_tol * scale)
    throw ConvergenceError("quadrature did not converge under node doubling",
                           std::abs(coarse), std::abs(fine));
  return fine;
}

namespace {

double panel_value(const std::function<double(double)>& f, double a, double b,
                   int nodes) {
  const Rule& rule = gauss_legendre(nodes);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < nodes; ++i)
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

double adaptive_impl(const std::function<double(double)>& f, double a,
                     double b, double tol, double noise_floor, int depth,
                     int max_depth) {
  const double coarse = panel_value(f, a, b, 15);
  const double fine = panel_value(f, a, b, 31);
  const double diff = std::abs(fine - coarse);
  // the noise floor is relative to the whole integral, not this panel:
  // near a zero of the integrand the panel value collapses while the
  // disagreement is pure evaluation noise, and a local floor never triggers
  if (diff <= tol || diff <= noise_floor || depth >= max_depth) return fine;
  const double mid = 0.5 * (a + b);
  return adaptive_impl(f, a, mid, 0.5 * tol, noise_floor, depth + 1,
                       max_depth) +
         adaptive_impl(f, mid, b, 0.5 * tol, noise_floor, depth + 1,
                       max_depth);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, double abs_tol,
                          int max_depth) {
  if (b <= a) return 0.0;
  const double rough = std::abs(panel_value(f, a, b, 31));
  const double tol = std::max(abs_tol, rel_tol * rough);
  const double noise_floor = std::max(abs_tol, 1e-13 * rough);
  return adaptive_impl(f, a, b, tol, noise_floor, 0, max_depth);
}

}  // namespace wavexp::quad
