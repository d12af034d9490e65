#pragma once

#include <optional>
#include <string>
#include <vector>

#include "magpol/grid.hpp"
#include "magpol/pekar.hpp"

namespace magpol {

enum class BlockRepresentative { Midpoint };

struct CutoffParams {
  double K = 0.0;
  double K3 = 0.0;
  double Kperp = 1.0;
  double gamma = 0.5;
  double L = 1.0;
  long M = 1;
  BlockRepresentative k_b = BlockRepresentative::Midpoint;

  /// Block width 2 K3 / M.
  double block_width() const { return 2.0 * K3 / static_cast<double>(M); }
};

struct ConstantsLedger {
  double kappa = 0.0;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double R = 0.0;
  double localization_error = 0.0;
  double block_error = 0.0;
  double mode_count_error = 0.0;    // M
  double projection_constant = 0.0;  // 1 + alpha/2
  double firstcut_constant = 0.25;
};

struct ValidityFlags {
  bool kappa_positive = false;      // 8 alpha / pi < K
  bool kappa1_positive = false;
  bool gamma_in_range = false;      // 0 < gamma < 1
  bool blocks_nonempty = false;     // M >= 1
  bool cutoff_ordering = false;     // 0 < K3 <= K, 1 <= Kperp <= K, L > 0
  bool K_at_least_sqrtB = false;

  bool all() const noexcept {
    return kappa_positive && kappa1_positive && gamma_in_range && blocks_nonempty && cutoff_ordering &&
           K_at_least_sqrtB;
  }
};

/// Conditions under which the default parameter choices are meant to be used.
/// They do not affect the arithmetic of the bound.
struct AdvisoryFlags {
  bool gamma_at_most_half = false;
  /// guard (ln B)^{-1/2} <= kappa <= guard^{-1} ln B
  bool kappa_window = false;
  double guard_constant = 1.0;
};

struct LowerBoundCertificate {
  PhysParams params;
  CutoffParams cutoffs;
  ConstantsLedger ledger;
  double I_value = 0.0;
  double p0_bound = 0.0;
  std::optional<double> conditional_full_bound;
  std::optional<double> assumed_C_M;
  ValidityFlags validity;
  AdvisoryFlags advisory;
  std::vector<std::string> assumptions;

  bool valid() const noexcept { return validity.all(); }
  /// kappa2 B + I - M - block_error - localization_error - projection_constant.
  double recompute_p0() const noexcept;
};

/// 1 - 8 alpha / (pi K); DomainError unless K > 8 alpha / pi.
double kappa(double K, double alpha);
/// kappa - (8 alpha / (pi K3)) e^x E1(x), x = K3^2 / 2B.
double kappa1(double kappa, double K3, double B, double alpha);
/// kappa - 2 alpha K3 / (pi Kperp^2).
double kappa2(double kappa, double K3, double Kperp, double alpha);

/// v(k3) = sqrt(pi (ln(Kperp^2 + k3^2) - ln(1 + k3^2))).
double coupling_v(double k3, double Kperp);
/// int_{|k3| <= K3} v^2 dk3, adaptive quadrature.
double total_R(double K3, double Kperp);
/// (int_lo^hi v^2)^{1/2}.
double block_V(double lo, double hi, double Kperp);

/// pi^2 / L^2, the gradient cost of the bump sqrt(2) cos(pi t) on [-1/2, 1/2].
double localization_error(double L);
/// alpha K3^2 L^2 R / (4 pi^2 gamma M^2).
double block_error(double alpha, double K3, double L, double gamma, long M, double R);

/// Kperp = sqrt(B), K3 = kappa^{-1/2} (ln B)^{3/2},
/// L^2 = kappa^{1/5} K3^{-3/5} (ln Kperp)^{-3/5}, M = max(1, floor(L^{-2})),
/// gamma = kappa^{4/5} K3^{3/5} (ln Kperp)^{-7/5}, midpoint representatives.
/// Requires B >= 1e3 and K >= sqrt(B).
CutoffParams default_params(double B, double alpha, double K);

/// min over unit-mass f of kappa1 int |f'|^2 - alpha / (4 pi^2 (1 - gamma)) int_{|k| <= K3} v^2 |rho_hat|^2.
double effective_I(double kappa1, double gamma, double K3, double Kperp, double alpha, const Grid1D& grid,
                   double tol);
double effective_I(double kappa1, double gamma, double K3, double Kperp, double alpha);

/// -alpha^2 (ln Kperp)^2 / (12 kappa1 (1 - gamma)^2).
double effective_I_envelope(double kappa1, double gamma, double Kperp, double alpha);

/// Certificate with default_params(B, alpha, K) unless params are given.
/// Out-of-range parameters give a certificate with validity flags cleared;
/// I and p0_bound are then NaN when they cannot be evaluated.
LowerBoundCertificate certify_p0(double B, double alpha, double K,
                                 const std::optional<CutoffParams>& params = std::nullopt);

/// p0_bound - C_M (ln B)^2 sqrt(K / B) - 1/4, conditional on the constant C_M.
double conditional_full_bound(const LowerBoundCertificate& cert, double C_M);
/// Same, recorded on the certificate.
void attach_conditional_bound(LowerBoundCertificate& cert, double C_M);

/// B - C (ln B)^2.
double rough_lower_formula(double B, double alpha, double C);

}  // namespace magpol
