#pragma once

// Independent reference computations used only by the test suites. They are
// deliberately slow and rely on brute quadrature rather than on the library's
// closed forms.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "magpol/grid.hpp"
#include "magpol/quadrature.hpp"

namespace oracle {

inline double integrate(const std::function<double(double)>& f, double a, double b, double rel = 1e-14) {
  return magpol::quad::adaptive(f, a, b, rel, 1e-300, 60).value;
}

/// (2/sqrt(pi)) int_0^inf exp(-t^2 - 2 x t) dt, x >= 0.
inline double erfcx(double x) {
  auto f = [x](double t) { return std::exp(-t * t - 2.0 * x * t); };
  const double scale = 1.0 / (1.0 + x);
  return 2.0 / std::sqrt(std::numbers::pi) *
         (integrate(f, 0.0, scale) + integrate(f, scale, 10.0 * scale) + integrate(f, 10.0 * scale, 40.0 * scale) +
          integrate(f, 40.0 * scale, 40.0));
}

/// e^x E1(x) = int_0^inf e^{-t} / (x + t) dt, x > 0.
inline double scaled_e1(double x) {
  auto f = [x](double t) { return std::exp(-t) / (x + t); };
  double s = 0.0, lo = 0.0, hi = std::min(x, 1.0);
  while (lo < 800.0) {
    s += integrate(f, lo, hi);
    lo = hi;
    hi = std::min(2.0 * hi, 800.0);
  }
  return s;
}

/// Tensor Gauss-Legendre on [-L, L]^2 with `panels` panels per axis,
/// 20 nodes each.
inline double tensor_gl(const std::function<double(double, double)>& f, double L, int panels) {
  const auto& rule = magpol::quad::gauss_legendre(20);
  const double w = 2.0 * L / panels;
  std::vector<double> x, wx;
  for (int p = 0; p < panels; ++p) {
    const double c = -L + w * (p + 0.5);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      x.push_back(c + 0.5 * w * rule.nodes[i]);
      wx.push_back(0.5 * w * rule.weights[i]);
    }
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) s += wx[i] * wx[j] * f(x[i], x[j]);
  return s;
}

struct Converged {
  double value;
  double change;
};

/// Doubles the panel count until two successive tensor rules agree to
/// rel * |value| + abs.
inline Converged tensor_gl_converged(const std::function<double(double, double)>& f, double L,
                                     double rel = 1e-12, double abs = 0.0, int start = 4,
                                     int max_panels = 256) {
  double prev = tensor_gl(f, L, start);
  for (int p = 2 * start; p <= max_panels; p *= 2) {
    const double cur = tensor_gl(f, L, p);
    const double change = std::abs(cur - prev);
    if (change <= rel * std::abs(cur) + abs) return {cur, change};
    prev = cur;
  }
  return {prev, std::numeric_limits<double>::infinity()};
}

/// Random smooth, decaying field: a sum of 1..4 Gaussians with random centers,
/// widths and signed amplitudes, on a grid wide enough for all of them.
inline magpol::Field1D random_field(const magpol::Grid1D& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_real_distribution<double> center(-5.0, 5.0), width(0.4, 2.5), amp(-1.0, 1.0);
  const int k = count(rng);
  std::vector<double> c(k), w(k), a(k);
  for (int i = 0; i < k; ++i) {
    c[i] = center(rng);
    w[i] = width(rng);
    a[i] = amp(rng);
  }
  a[0] = 1.0 + std::abs(a[0]);
  return magpol::Field1D::sample(g, [&](double t) {
    double s = 0.0;
    for (int i = 0; i < k; ++i) s += a[i] * std::exp(-0.5 * std::pow((t - c[i]) / w[i], 2));
    return s;
  });
}

/// int_{R^2} (B/4pi) e^{-B|u|^2/4} / sqrt(|u|^2 + z^2) du on [-L, L]^2, with
/// each quadrant split into two triangles and Duffy-mapped so the 1/|u| point
/// at the origin becomes smooth.
inline double veff_2d(double z, double B) {
  using std::numbers::pi;
  const double L = 12.0 / std::sqrt(B);
  auto f = [&](double u1, double u2) {
    const double r2 = u1 * u1 + u2 * u2;
    return B / (4.0 * pi) * std::exp(-0.25 * B * r2) / std::sqrt(r2 + z * z);
  };
  // Triangle 0 <= u2 <= u1 <= L: u1 = s, u2 = s t, du = s ds dt. All eight
  // triangles are equivalent by symmetry.
  auto g = [&](double s, double t) { return s * f(s, s * t); };
  // Map the tensor oracle's square [-L, L]^2 onto [0, L] x [0, 1].
  auto mapped = [&](double a, double b) { return 0.25 * g(0.5 * (a + L), 0.5 * (b + L) / L); };
  return 8.0 * oracle::tensor_gl_converged(mapped, L, 1e-12).value / L;
}

}  // namespace oracle
