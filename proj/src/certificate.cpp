#include "magpol/certificate.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "magpol/effective_1d.hpp"
#include "magpol/errors.hpp"
#include "magpol/quadrature.hpp"
#include "magpol/special_functions.hpp"

namespace magpol {
namespace {

using std::numbers::pi;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double v_squared(double k3, double Kperp) {
  const double k2 = k3 * k3;
  return pi * (std::log(Kperp * Kperp + k2) - std::log1p(k2));
}

void require_Kperp(double Kperp) {
  if (!(Kperp >= 1.0) || !std::isfinite(Kperp)) throw DomainError("Kperp must be at least 1");
}

}  // namespace

double LowerBoundCertificate::recompute_p0() const noexcept {
  return ledger.kappa2 * params.B + I_value - ledger.mode_count_error - ledger.block_error -
         ledger.localization_error - ledger.projection_constant;
}

double kappa(double K, double alpha) {
  if (!(alpha >= 0.0)) throw DomainError("alpha must be nonnegative");
  if (!(K > 8.0 * alpha / pi)) throw DomainError("cutoff K must exceed 8 alpha / pi");
  return 1.0 - 8.0 * alpha / (pi * K);
}

double kappa1(double kappa, double K3, double B, double alpha) {
  if (!(K3 > 0.0) || !(B > 0.0)) throw DomainError("kappa1 needs K3 > 0 and B > 0");
  const double x = K3 * K3 / (2.0 * B);
  return kappa - 8.0 * alpha / (pi * K3) * special::scaled_expint_e1(x);
}

double kappa2(double kappa, double K3, double Kperp, double alpha) {
  require_Kperp(Kperp);
  return kappa - 2.0 * alpha * K3 / (pi * Kperp * Kperp);
}

double coupling_v(double k3, double Kperp) {
  require_Kperp(Kperp);
  return std::sqrt(v_squared(k3, Kperp));
}

double total_R(double K3, double Kperp) {
  require_Kperp(Kperp);
  if (!(K3 >= 0.0)) throw DomainError("K3 must be nonnegative");
  if (K3 == 0.0) return 0.0;
  return 2.0 * quad::adaptive([Kperp](double k) { return v_squared(k, Kperp); }, 0.0, K3, 1e-13).value;
}

double block_V(double lo, double hi, double Kperp) {
  require_Kperp(Kperp);
  if (!(hi >= lo)) throw DomainError("block must have hi >= lo");
  if (hi == lo) return 0.0;
  return std::sqrt(quad::adaptive([Kperp](double k) { return v_squared(k, Kperp); }, lo, hi, 1e-13).value);
}

double localization_error(double L) {
  if (!(L > 0.0)) throw DomainError("localization length must be positive");
  return pi * pi / (L * L);
}

double block_error(double alpha, double K3, double L, double gamma, long M, double R) {
  if (!(L > 0.0)) throw DomainError("localization length must be positive");
  if (M < 1) throw DomainError("block count must be at least 1");
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0, 1)");
  const double m = static_cast<double>(M);
  return alpha * K3 * K3 * L * L * R / (4.0 * pi * pi * gamma * m * m);
}

CutoffParams default_params(double B, double alpha, double K) {
  if (!(B >= 1e3) || !std::isfinite(B)) throw DomainError("default parameters need B >= 1e3");
  if (!(K >= std::sqrt(B))) throw DomainError("default parameters need K >= sqrt(B)");
  const double k = kappa(K, alpha);
  CutoffParams c;
  c.K = K;
  c.Kperp = std::sqrt(B);
  const double lnKp = std::log(c.Kperp);
  c.K3 = std::pow(std::log(B), 1.5) / std::sqrt(k);
  const double L2 = std::pow(k, 0.2) * std::pow(c.K3, -0.6) * std::pow(lnKp, -0.6);
  c.L = std::sqrt(L2);
  c.M = std::max(1L, static_cast<long>(std::floor(1.0 / L2)));
  c.gamma = std::pow(k, 0.8) * std::pow(c.K3, 0.6) * std::pow(lnKp, -1.4);
  c.k_b = BlockRepresentative::Midpoint;
  return c;
}

double effective_I(double kappa1, double gamma, double K3, double Kperp, double alpha, const Grid1D& grid,
                   double tol) {
  if (!(kappa1 > 0.0)) throw DomainError("effective I needs kappa1 > 0");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in [0, 1)");
  require_Kperp(Kperp);
  if (alpha == 0.0) return 0.0;
  WeightedProblem wp;
  wp.kappa1 = kappa1;
  wp.prefactor_lambda = alpha / (4.0 * pi * pi * (1.0 - gamma));
  wp.weight = [Kperp](double k) { return v_squared(k, Kperp); };
  wp.cutoff_K3 = K3;
  return solve_weighted(wp, grid, tol).energy;
}

double effective_I(double kappa1, double gamma, double K3, double Kperp, double alpha) {
  return effective_I(kappa1, gamma, K3, Kperp, alpha, Grid1D(4096, 40.0), 1e-10);
}

double effective_I_envelope(double kappa1, double gamma, double Kperp, double alpha) {
  const double l = std::log(Kperp);
  return -alpha * alpha * l * l / (12.0 * kappa1 * (1.0 - gamma) * (1.0 - gamma));
}

LowerBoundCertificate certify_p0(double B, double alpha, double K, const std::optional<CutoffParams>& params) {
  LowerBoundCertificate cert;
  cert.params = {B, alpha};
  cert.params.validate();
  cert.cutoffs = params ? *params : default_params(B, alpha, K);
  const auto& c = cert.cutoffs;
  if (params && c.K != K) throw DomainError("explicit cutoff parameters disagree with K");

  auto& v = cert.validity;
  v.kappa_positive = K > 8.0 * alpha / pi;
  v.gamma_in_range = c.gamma > 0.0 && c.gamma < 1.0;
  v.blocks_nonempty = c.M >= 1;
  v.cutoff_ordering = c.K3 > 0.0 && c.K3 <= c.K && c.Kperp >= 1.0 && c.Kperp <= c.K && c.L > 0.0;
  v.K_at_least_sqrtB = K >= std::sqrt(B);

  auto& l = cert.ledger;
  l.projection_constant = 1.0 + 0.5 * alpha;
  l.firstcut_constant = 0.25;
  l.mode_count_error = static_cast<double>(c.M);
  l.kappa = v.kappa_positive ? kappa(K, alpha) : kNaN;
  const bool shape_ok = v.cutoff_ordering && v.gamma_in_range && v.blocks_nonempty;
  if (v.kappa_positive && shape_ok) {
    l.kappa1 = kappa1(l.kappa, c.K3, B, alpha);
    l.kappa2 = kappa2(l.kappa, c.K3, c.Kperp, alpha);
    l.R = total_R(c.K3, c.Kperp);
    l.localization_error = localization_error(c.L);
    l.block_error = block_error(alpha, c.K3, c.L, c.gamma, c.M, l.R);
  } else {
    l.kappa1 = l.kappa2 = l.R = l.localization_error = l.block_error = kNaN;
  }
  v.kappa1_positive = l.kappa1 > 0.0;

  const double lnB = std::log(B);
  auto& a = cert.advisory;
  a.gamma_at_most_half = c.gamma <= 0.5;
  a.kappa_window = v.kappa_positive && l.kappa >= a.guard_constant / std::sqrt(lnB) &&
                   l.kappa <= lnB / a.guard_constant;

  if (v.all()) {
    cert.I_value = effective_I(l.kappa1, c.gamma, c.K3, c.Kperp, alpha);
    cert.p0_bound = cert.recompute_p0();
  } else {
    cert.I_value = kNaN;
    cert.p0_bound = kNaN;
  }

  cert.assumptions = {
      "coherent-state step: the block Hamiltonian is bounded below by I - M, one unit per "
      "block",
      "block representatives k_b at block midpoints",
      "localization bump sqrt(2) cos(pi t) on [-1/2, 1/2]",
  };
  return cert;
}

double conditional_full_bound(const LowerBoundCertificate& cert, double C_M) {
  if (!cert.valid()) throw DomainError("conditional bound needs a valid certificate");
  if (!(C_M >= 0.0)) throw DomainError("C_M must be nonnegative");
  const double lnB = std::log(cert.params.B);
  return cert.p0_bound - C_M * lnB * lnB * std::sqrt(cert.cutoffs.K / cert.params.B) - cert.ledger.firstcut_constant;
}

void attach_conditional_bound(LowerBoundCertificate& cert, double C_M) {
  cert.conditional_full_bound = conditional_full_bound(cert, C_M);
  cert.assumed_C_M = C_M;
}

double rough_lower_formula(double B, double /*alpha*/, double C) {
  if (!(B > 1.0)) throw DomainError("B must exceed 1");
  const double lnB = std::log(B);
  return B - C * lnB * lnB;
}

}  // namespace magpol
