#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace magpol {

using TransverseState = std::function<std::complex<double>(double, double)>;

/// Lowest-Landau-level ground state g_B(x) = sqrt(B/2pi) exp(-B|x|^2/4),
/// symmetric gauge A = (B/2)(-x2, x1).
class TransverseGaussian {
 public:
  explicit TransverseGaussian(double B);

  double B() const noexcept { return B_; }
  double operator()(double x1, double x2) const noexcept;
  /// |g_B|^2 as a function of the radius.
  double density(double r) const noexcept;

 private:
  double B_;
};

/// Radially symmetric transverse density with unit mass 2 pi int rho r dr = 1,
/// sampled on composite Gauss-Legendre nodes of [0, 14/sqrt(B)]. Its Hankel
/// transform is tabulated once for the effective potential.
class RadialTransverseDensity {
 public:
  RadialTransverseDensity(double B, const std::function<double(double)>& rho);

  static RadialTransverseDensity landau_ground(double B);
  /// |c0 g_B + c1 psi_1|^2 with psi_1 = (1 - B r^2/2) g_B, c0^2 + c1^2 = 1.
  static RadialTransverseDensity landau_mixture(double B, double c0, double c1);

  double B() const noexcept { return B_; }
  std::span<const double> radii() const noexcept { return r_; }
  std::span<const double> values() const noexcept { return rho_; }
  double mass() const;
  /// rho_hat(k) = 2 pi int rho(r) J0(k r) r dr.
  double fourier(double k) const;

  /// Nodes k_i and weights c_i with V(z) = sum_i c_i exp(-k_i |z|).
  std::span<const double> potential_nodes() const noexcept { return k_; }
  std::span<const double> potential_weights() const noexcept { return c_; }

 private:
  double B_;
  std::vector<double> r_, w_, rho_;
  std::vector<double> k_, c_;
};

/// Lowest Landau level projector kernel
/// (B/2pi) exp(-B|x-y|^2/4) exp(i B (x1 y2 - x2 y1)/2).
std::complex<double> p0_kernel(double x1, double x2, double y1, double y2, double B);

/// Kernel of I_k: P0(x,y) exp(k ^ (x-y)/2) exp(i k.(x+y)/2), a ^ b = a1 b2 - a2 b1.
std::complex<double> i_kperp_kernel(double k1, double k2, double x1, double x2, double y1,
                                    double y2, double B);

/// exp(-|k|^2 / 2B): P0 e^{ik.x} P0 = P0 exp(-|k|^2/2B) I_k P0.
double projected_phase_factor(double k1, double k2, double B);

/// Normalized lowest-Landau-level state sum_m c_m phi_m with
/// phi_m ~ (x1 - i x2)^m exp(-B|x|^2/4).
TransverseState lll_state(double B, std::vector<std::complex<double>> coefficients);

/// (1 - B|x|^2/2) g_B: normalized, radial, in the second Landau level.
TransverseState first_excited_radial(double B);

struct NormCheck {
  bool pass = false;
  double value = 0.0;   // ||I_k psi|| / ||psi||
  double bound = 0.0;   // 2 exp(|k|^2 / 4B)
  double margin = 0.0;  // bound - value
  double quadrature_error = 0.0;
};

/// ||I_k psi|| <= 2 exp(|k|^2/4B) ||psi|| by tensor Gauss-Legendre application of
/// the kernel. psi must be concentrated in |x| < 12/sqrt(B). The error estimate
/// compares two resolutions; throws QuadratureError above 1e-8 relative.
NormCheck i_kperp_norm_bound_check(double k1, double k2, double B, const TransverseState& psi);

/// V_eff(z;B) = (sqrt(pi B)/2) erfcx(sqrt(B)|z|/2): Coulomb kernel averaged over
/// two copies of |g_B|^2.
double effective_potential(double z, double B);
/// U(k;B) = pi e^{k^2/B} E1(k^2/B); the Coulomb energy of a product state is
/// (1/4pi^2) int |rho_hat_3(k)|^2 U(k;B) dk.
double effective_potential_fourier(double k, double B);
/// Same average for a general radial density, int_0^inf |rho_hat(q)|^2 e^{-q|z|} dq.
double effective_potential_general(const RadialTransverseDensity& rho, double z);

/// Lowest Landau level energy B of the product ansatz.
double transverse_kinetic(double B);
/// States orthogonal to the lowest Landau level carry at least this factor times B.
inline constexpr double higher_level_factor = 3.0;

}  // namespace magpol
