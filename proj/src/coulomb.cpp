#include "magpol/coulomb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "magpol/errors.hpp"
#include "magpol/quadrature.hpp"
#include "magpol/spectral.hpp"
#include "magpol/special_functions.hpp"

namespace magpol {
namespace {

using std::numbers::pi;

void require_B(double B, double lower, const char* what) {
  if (!(B > lower) || !std::isfinite(B)) throw DomainError(what);
}

}  // namespace

KernelConvolution::KernelConvolution(const Grid1D& grid, const std::function<double(double)>& kernel,
                                     double core_width, int order)
    : grid_(grid) {
  if (order < 2 || order % 2 != 0) throw DomainError("interpolation order must be even and >= 2");
  if (!(core_width > 0.0)) throw DomainError("kernel core width must be positive");
  const std::size_t n = grid.size();
  const double h = grid.spacing();
  const int half = order / 2;
  const int levels = std::clamp(static_cast<int>(std::ceil(std::log2(h / core_width))) + 8, 2, 60);

  // Cardinal function of node 0 on cell [c, c+1] (index units).
  auto cardinal = [half](int c, double s) {
    double v = 1.0;
    for (int q = c - half + 1; q <= c + half; ++q)
      if (q != 0) v *= (s - q) / (-q);
    return v;
  };

  w_.assign(n, 0.0);
  for (std::size_t mi = 0; mi < n; ++mi) {
    const double m = static_cast<double>(mi);
    double total = 0.0;
    for (int c = -half; c < half; ++c) {
      auto integrand = [&](double s) { return kernel((m - s) * h) * cardinal(c, s); };
      const double lo = c, hi = c + 1.0;
      if (m == lo || m == hi) {
        // Kink of V at the cell end s = m: grade toward it.
        const double dir = m == lo ? 1.0 : -1.0;
        total += quad::graded([&](double u) { return integrand(m + dir * u); }, 0.0, 1.0, levels, 16);
      } else if (std::min(std::abs(m - lo), std::abs(m - hi)) < 1.5) {
        total += quad::composite(integrand, lo, hi, 2, 16);
      } else {
        total += quad::gauss(integrand, lo, hi, 8);
      }
    }
    w_[mi] = h * total;
  }

  std::vector<double> padded(2 * n, 0.0);
  for (std::size_t m = 0; m < n; ++m) padded[m] = w_[m];
  for (std::size_t m = 1; m < n; ++m) padded[2 * n - m] = w_[m];
  w_hat_ = spectral::forward(padded);
}

double KernelConvolution::weight(long m) const {
  const auto a = static_cast<std::size_t>(std::abs(m));
  return a < w_.size() ? w_[a] : 0.0;
}

std::vector<double> KernelConvolution::apply(std::span<const double> rho) const {
  const std::size_t n = grid_.size();
  if (rho.size() != n) throw InvalidField("density size does not match the convolution grid");
  std::vector<double> padded(2 * n, 0.0);
  std::copy(rho.begin(), rho.end(), padded.begin());
  auto spec = spectral::forward(padded);
  for (std::size_t m = 0; m < spec.size(); ++m) spec[m] *= w_hat_[m];
  const auto back = spectral::inverse(spec);
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = back[j].real();
  return out;
}

double KernelConvolution::pair_energy(const DensityProfile& rho1, const DensityProfile& rho2) const {
  if (!(rho1.grid() == grid_) || !(rho2.grid() == grid_))
    throw InvalidField("density grid does not match the convolution grid");
  const auto conv = apply(rho2.values());
  const auto r = rho1.values();
  double s = 0.0;
  for (std::size_t j = 0; j < conv.size(); ++j) s += r[j] * conv[j];
  return 0.5 * grid_.spacing() * s;
}

KernelConvolution landau_coulomb(const Grid1D& grid, double B) {
  require_B(B, 0.0, "field strength B must be positive");
  return KernelConvolution(grid, [B](double z) { return effective_potential(z, B); }, 1.0 / std::sqrt(B));
}

double coulomb_D_product(const Field1D& f, double B) {
  return landau_coulomb(f.grid(), B).energy(DensityProfile::from_field(f));
}

double coulomb_D_fourier(const Field1D& f, double B) {
  require_B(B, 0.0, "field strength B must be positive");
  const auto rho = DensityProfile::from_field(f);
  const auto spec = density_fourier(rho);
  const double peak = std::abs(spec.values[0]);
  if (peak == 0.0) return 0.0;
  const double dk = spec.dual_spacing;
  double kend = 0.0;
  for (std::size_t m = 0; m < spec.values.size(); ++m)
    if (std::abs(spec.values[m]) > 1e-14 * peak) kend = std::max(kend, std::abs(spec.wavenumbers[m]));
  kend = std::min(kend + 2.0 * dk, f.grid().nyquist());

  auto integrand = [&](double k) {
    return std::norm(density_fourier_at(rho, k)) * effective_potential_fourier(k, B);
  };
  double s = quad::graded(integrand, 0.0, dk, 40, 20);
  if (kend > dk) {
    const auto panels = static_cast<std::size_t>(std::ceil((kend - dk) / (2.0 * dk)));
    s += quad::composite(integrand, dk, kend, panels, 20);
  }
  return s / (2.0 * pi * pi);
}

DualPathCoulomb coulomb_D_dual(const Field1D& f, double B) {
  DualPathCoulomb d;
  d.real_space = coulomb_D_product(f, B);
  d.fourier = coulomb_D_fourier(f, B);
  const double scale = std::max(std::abs(d.real_space), std::abs(d.fourier));
  d.relative_gap = scale > 0.0 ? std::abs(d.real_space - d.fourier) / scale : 0.0;
  return d;
}

double main_coefficient(double B) {
  require_B(B, std::numbers::e, "main coefficient needs B > e");
  const double L = std::log(B);
  return 0.5 * L - std::log(L);
}

double kernel_KB(double r, double B) {
  require_B(B, 1.0, "K_B needs B > 1");
  if (!(r > 0.0)) throw DomainError("K_B is singular at r = 0");
  const double L = std::log(B);
  return std::log1p(std::sqrt(1.0 + L * L * r * r)) - std::log(std::sqrt(B) * r);
}

double kernel_KB2(double r, double B) {
  require_B(B, 1.0, "K_B needs B > 1");
  if (!(r > 0.0)) throw DomainError("K_B is singular at r = 0");
  const double u = std::sqrt(B) * r;
  return u <= 1.0 ? -std::log(u) : 0.0;
}

double kernel_KB1(double r, double B) { return kernel_KB(r, B) - kernel_KB2(r, B); }

double kappa_tilde(double B) {
  require_B(B, 1.0, "K_B needs B > 1");
  const double L = std::log(B);
  const double c = L * L / B;
  // Radial variable u = sqrt(B) r; the -ln u part integrates to (gamma - ln 4)/2.
  const auto smooth = quad::adaptive(
      [c](double u) { return 0.5 * u * std::exp(-0.25 * u * u) * std::log1p(std::sqrt(1.0 + c * u * u)); },
      0.0, 40.0, 1e-14);
  return smooth.value + 0.5 * (special::euler_gamma - std::log(4.0));
}

double r1_bound(double mass, double kinetic, double B) {
  require_B(B, 1.0, "R1 bound needs B > 1");
  const double L = std::log(B);
  return 0.5 * L * mass * mass + 4.0 / std::sqrt(L) * std::pow(mass, 1.25) * std::pow(kinetic, 0.75);
}

double r1_bound(const Field1D& f, double B) { return r1_bound(mass(f), kinetic(f), B); }

double r2_term(const Field1D& f, double B) { return kappa_tilde(B) * quartic(f); }

double r2_projected_ratio(const Field1D& f, double B) {
  const double m = mass(f), t = kinetic(f);
  if (m == 0.0 || t == 0.0) throw InvalidField("projected R2 ratio needs a nonconstant, nonzero field");
  return r2_term(f, B) / (std::pow(m, 1.5) * std::sqrt(t));
}

bool DecompositionLedger::closes() const noexcept {
  return std::abs(D_total - (main_term + R1 + R2)) <= quadrature_error_estimate;
}

bool DecompositionLedger::r1_within_bound() const noexcept {
  return std::abs(R1) <= R1_bound + quadrature_error_estimate;
}

DecompositionLedger decompose(const Field1D& f, double B) {
  DecompositionLedger l;
  const auto dual = coulomb_D_dual(f, B);
  const double q = quartic(f);
  l.D_total = dual.real_space;
  l.main_coefficient = main_coefficient(B);
  l.main_term = l.main_coefficient * q;
  l.R2 = kappa_tilde(B) * q;
  l.R1 = l.D_total - l.main_term - l.R2;
  l.R1_bound = r1_bound(f, B);
  l.quadrature_error_estimate =
      std::abs(dual.real_space - dual.fourier) + 1e-13 * (std::abs(l.D_total) + std::abs(l.main_term) + std::abs(l.R2));
  return l;
}

OffDiagonalTerms offdiag_terms(double c0, double c1, const Field1D& f, double B) {
  const auto rho = DensityProfile::from_field(f);
  auto self_energy = [&](const RadialTransverseDensity& t) {
    return KernelConvolution(f.grid(), [&t](double z) { return effective_potential_general(t, z); },
                             1.0 / std::sqrt(B))
        .energy(rho);
  };
  const auto ground = RadialTransverseDensity::landau_ground(B);
  OffDiagonalTerms t;
  t.D_full = self_energy(RadialTransverseDensity::landau_mixture(B, c0, c1));
  const double d_ground = self_energy(ground);
  t.D_lowest = std::pow(c0, 4) * d_ground;
  t.D_higher = std::pow(c1, 4) * self_energy(RadialTransverseDensity::landau_mixture(B, 0.0, 1.0));
  // The ground-state term has a closed-form twin; its deviation sizes the error.
  const double rel = std::abs(d_ground - coulomb_D_product(f, B)) / std::max(d_ground, 1e-300);
  t.error = rel * (t.D_full + t.D_lowest + t.D_higher) + 1e-13 * t.D_full;
  return t;
}

OffDiagonalCheck offdiag_bound_check(double eps, const OffDiagonalTerms& terms) {
  if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("epsilon must lie in (0, 1]");
  OffDiagonalCheck c;
  c.tau = 3.0 * eps + 2.0 * eps * eps;
  c.lhs = terms.D_full;
  c.rhs = (1.0 + c.tau) * terms.D_lowest +
          (1.0 + eps) * (1.0 + eps) * (1.0 + 2.0 * eps) / (eps * eps * eps) * terms.D_higher;
  c.margin = c.rhs - c.lhs;
  c.pass = c.margin >= -terms.error;
  return c;
}

OffDiagonalCheck offdiag_bound_check(double eps, double c0, double c1, const Field1D& f, double B) {
  return offdiag_bound_check(eps, offdiag_terms(c0, c1, f, B));
}

}  // namespace magpol
