#include "magpol/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "magpol/errors.hpp"

namespace magpol::special {
namespace {

constexpr double inv_sqrt_pi = 0.56418958354775628694807945156077259;

// e^{x^2} with the rounding error of x*x recovered through fma.
double exp_square(double x) {
  const double hi = x * x;
  const double lo = std::fma(x, x, -hi);
  return std::exp(hi) * std::exp(lo);
}

// Continued fraction erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
// evaluated with the modified Lentz algorithm. Fast for x >= 2.
double erfcx_continued_fraction(double x) {
  constexpr double tiny = 1e-300;
  double f = x;
  double c = x, d = 0.0;
  for (int k = 1; k < 5000; ++k) {
    const double a = 0.5 * k;
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return inv_sqrt_pi / f;
}

}  // namespace

double erfcx(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) return 2.0 * exp_square(x) - erfcx(-x);
  if (x < 2.0) return exp_square(x) * std::erfc(x);
  return erfcx_continued_fraction(x);
}

double scaled_expint_e1(double x) {
  if (!(x > 0.0)) throw DomainError("E1 requires x > 0");
  if (x <= 1.0) {
    // E1 = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
    double sum = 0.0, term = 1.0;
    for (int k = 1; k < 60; ++k) {
      term *= -x / k;
      const double add = term / k;
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return std::exp(x) * (-euler_gamma - std::log(x) - sum);
  }
  // e^x E1(x) = 1/(x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - ...))), modified Lentz.
  constexpr double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h;
}

double expint_e1(double x) {
  if (!(x > 0.0)) throw DomainError("E1 requires x > 0");
  if (x <= 1.0) return scaled_expint_e1(x) * std::exp(-x);
  if (x > 745.0) return 0.0;
  return scaled_expint_e1(x) * std::exp(-x);
}

}  // namespace magpol::special
