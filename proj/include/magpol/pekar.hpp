#pragma once

#include <cstddef>
#include <vector>

#include "magpol/effective_1d.hpp"
#include "magpol/grid.hpp"

namespace magpol {

struct PhysParams {
  double B = 0.0;
  double alpha = 1.0;

  /// B > 1, alpha >= 0 (alpha = 0 is accepted as the decoupled limit).
  void validate() const;
};

/// g_B (x) f with the transverse factor fixed to the lowest Landau Gaussian.
struct PekarProductState {
  PhysParams params;
  Field1D f;

  /// Throws InvalidField unless mass(f) = 1 within 1e-8.
  void validate() const;
};

struct EnergyBreakdown {
  double transverse = 0.0;
  double longitudinal_kinetic = 0.0;
  /// -alpha D, D = (1/2) int int f^2 f^2 V_eff.
  double coulomb = 0.0;
  double total = 0.0;
  /// Relative gap between the real-space and Fourier evaluations of D.
  double dual_gap = 0.0;

  /// longitudinal_kinetic + coulomb, kept separately because total - B loses
  /// digits once B is large.
  double binding() const noexcept { return longitudinal_kinetic + coulomb; }
};

EnergyBreakdown pekar_energy(const PekarProductState& s);

/// f = f_{1, ln B / 2} on n = 4096 points, T = 100 / ln B. Needs B > e.
PekarProductState trial_state(const PhysParams& p);
EnergyBreakdown trial_energy(const PhysParams& p);

/// Grid used for minimization: n points, T = base_T / max(1, alpha ln B / 4).
struct GridPolicy {
  std::size_t n = 8192;
  double base_T = 60.0;

  Grid1D grid_for(const PhysParams& p) const;
};

struct PekarResult {
  OneDSolution solution;
  EnergyBreakdown energy;
};

/// Gradient-flow minimizer of the product-state energy over unit-mass f.
/// alpha = 0 returns the decoupled value B with solution.zero_coupling set.
PekarResult pekar_minimize(const PhysParams& p, const Grid1D& g, double tol,
                           const SolveOptions& options = {});
PekarResult pekar_minimize(const PhysParams& p, double tol, const GridPolicy& policy = {});

struct ScalingCheck {
  bool pass = false;
  double lhs = 0.0;  // E_{B,alpha}[g_B (x) f_alpha]
  double rhs = 0.0;  // alpha^2 E_{B/alpha^2,1}[g (x) f]
  double relative_gap = 0.0;
  double margin = 0.0;  // 1e-8 - relative_gap
};
/// f_alpha(t) = sqrt(alpha) f(alpha t). Requires B / alpha^2 > 1.
ScalingCheck scaling_identity_check(double B, double alpha, const Field1D& f);

/// Classical-field energy at amplitude a = scale * a_opt, where
/// a_opt(k) = -(sqrt(alpha) / 2 pi) |k|^{-1} conj(rho_hat(k)) is the minimizing
/// amplitude. The k-integral is done in three dimensions, the transverse part
/// by direct quadrature.
double coherent_energy(const PekarProductState& s, double amplitude_scale);
/// Infimum over amplitudes, i.e. coherent_energy(s, 1).
double coherent_infimum(const PekarProductState& s);

struct SweepPoint {
  PhysParams params;
  EnergyBreakdown minimum;
  EnergyBreakdown trial;
  long iterations = 0;
  double residual = 0.0;
};

/// Independent minimizations, run on `workers` threads (0: hardware
/// concurrency). Results are sorted by B.
std::vector<SweepPoint> sweep(const std::vector<double>& Bs, double alpha, double tol,
                              const GridPolicy& policy = {}, unsigned workers = 1);

struct AsymptoticFit {
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
  double residual_rms = 0.0;
  std::vector<double> fit_window;
};

/// Least squares for E - B = -c2 X^2 + c3 X Y + c4 X, X = ln B, Y = ln ln B.
/// Throws FitError with fewer than 4 points or rank-deficient regressors.
AsymptoticFit fit_asymptotics(const std::vector<double>& Bs, const std::vector<double>& binding);
AsymptoticFit fit_asymptotics(const std::vector<SweepPoint>& points);

}  // namespace magpol
