#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace magpol::quad {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached n-point rule; the reference stays valid for the process lifetime.
const GaussRule& gauss_legendre(std::size_t n);

/// Fixed n-point Gauss-Legendre on [a, b].
template <class F>
double gauss(F&& f, double a, double b, std::size_t n = 20) {
  const auto& rule = gauss_legendre(n);
  const double c = 0.5 * (a + b), r = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += rule.weights[i] * f(c + r * rule.nodes[i]);
  return s * r;
}

/// Composite rule on `panels` equal panels.
template <class F>
double composite(F&& f, double a, double b, std::size_t panels, std::size_t n = 20) {
  const double w = (b - a) / static_cast<double>(panels);
  double s = 0.0;
  for (std::size_t p = 0; p < panels; ++p) s += gauss(f, a + w * p, a + w * (p + 1), n);
  return s;
}

/// Panels [a + (b-a) 2^{-l-1}, a + (b-a) 2^{-l}], l = 0..levels-1, plus the
/// remaining sliver at a. Suited to integrable endpoint singularities at a.
template <class F>
double graded(F&& f, double a, double b, int levels, std::size_t n = 20) {
  double s = 0.0;
  double hi = b;
  for (int l = 0; l < levels; ++l) {
    const double lo = a + 0.5 * (hi - a);
    s += gauss(f, lo, hi, n);
    hi = lo;
  }
  return s + gauss(f, a, hi, n);
}

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
};

/// Adaptive bisection with a 15/30-point Gauss-Legendre error estimate.
/// Throws QuadratureError if the tolerance is not met within max_depth.
AdaptiveResult adaptive(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-12, double abs_tol = 1e-300, int max_depth = 40);

}  // namespace magpol::quad
