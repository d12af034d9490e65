#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "magpol/grid.hpp"
#include "magpol/landau.hpp"

namespace magpol {

/// Convolution with an even kernel V by product integration: the density is
/// interpolated by local Lagrange polynomials and each cell integral of V times
/// a cardinal function is done by Gauss-Legendre, graded toward z = 0. The
/// kernel therefore never has to be resolved by the grid itself. The
/// convolution is linear (zero padded), not periodic.
class KernelConvolution {
 public:
  /// core_width: length scale of the kernel near 0 (1/sqrt(B) for Landau
  /// densities). order: interpolation stencil size, even.
  KernelConvolution(const Grid1D& grid, const std::function<double(double)>& kernel, double core_width,
                    int order = 8);

  const Grid1D& grid() const noexcept { return grid_; }
  /// Weight W_m, (V * rho)(t_j) = sum_i W_{j-i} rho_i.
  double weight(long m) const;

  /// (V * rho)(t_j).
  std::vector<double> apply(std::span<const double> rho) const;
  /// (1/2) int int rho1(x) rho2(y) V(x - y).
  double pair_energy(const DensityProfile& rho1, const DensityProfile& rho2) const;
  double energy(const DensityProfile& rho) const { return pair_energy(rho, rho); }

 private:
  Grid1D grid_;
  std::vector<double> w_;  // W_0 .. W_{n-1}
  std::vector<std::complex<double>> w_hat_;
};

/// Convolution with V_eff(.;B).
KernelConvolution landau_coulomb(const Grid1D& grid, double B);

/// D for the product state g_B (x) f: (1/2) int int f^2 f^2 V_eff, real-space path.
double coulomb_D_product(const Field1D& f, double B);
/// Same quantity from (1/4pi^2) int |rho_hat(k)|^2 U(k;B) dk.
double coulomb_D_fourier(const Field1D& f, double B);

struct DualPathCoulomb {
  double real_space = 0.0;
  double fourier = 0.0;
  double relative_gap = 0.0;
};
DualPathCoulomb coulomb_D_dual(const Field1D& f, double B);

/// C_B = ln B / 2 - ln ln B, B > e.
double main_coefficient(double B);

/// K_B(r) = ln(1 + sqrt(1 + (ln B)^2 r^2)) - ln(sqrt(B) r), r > 0, B > 1.
double kernel_KB(double r, double B);
/// Bounded part K_B - K_B^(2).
double kernel_KB1(double r, double B);
/// -ln(sqrt(B) r) for r <= 1/sqrt(B), else 0.
double kernel_KB2(double r, double B);
/// int int |g_B|^2(x) |g_B|^2(y) K_B(x - y) dx dy.
double kappa_tilde(double B);

/// (ln B / 2) m^2 + 4 (ln B)^{-1/2} m^{5/4} T^{3/4}, m = mass(f), T = kinetic(f).
double r1_bound(const Field1D& f, double B);
double r1_bound(double mass, double kinetic, double B);
/// kappa_tilde(B) * quartic(f).
double r2_term(const Field1D& f, double B);
/// R2 / (mass^{3/2} kinetic^{1/2}), the constant of the projected R2 bound.
double r2_projected_ratio(const Field1D& f, double B);

struct DecompositionLedger {
  double D_total = 0.0;
  double main_term = 0.0;
  double main_coefficient = 0.0;
  double R1 = 0.0;
  double R1_bound = 0.0;
  double R2 = 0.0;
  double quadrature_error_estimate = 0.0;

  bool closes() const noexcept;
  bool r1_within_bound() const noexcept;
};

/// D split as C_B int f^4 + R1 + R2; R1 is the closure D - main - R2.
DecompositionLedger decompose(const Field1D& f, double B);

/// Coulomb self-energies entering the off-diagonal estimate for the
/// transverse state c0 g_B + c1 psi_1.
struct OffDiagonalTerms {
  double D_full = 0.0;    // D(|phi|^2, |phi|^2)
  double D_lowest = 0.0;  // D(|P0 phi|^2, |P0 phi|^2)
  double D_higher = 0.0;  // D(|P> phi|^2, |P> phi|^2)
  double error = 0.0;
};
OffDiagonalTerms offdiag_terms(double c0, double c1, const Field1D& f, double B);

struct OffDiagonalCheck {
  bool pass = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tau = 0.0;  // 3 eps + 2 eps^2
};
/// D(|phi|^2) <= (1 + tau) D(|P0 phi|^2) + (1+eps)^2 (1+2eps) eps^{-3} D(|P> phi|^2).
OffDiagonalCheck offdiag_bound_check(double eps, const OffDiagonalTerms& terms);
OffDiagonalCheck offdiag_bound_check(double eps, double c0, double c1, const Field1D& f, double B);

}  // namespace magpol
