#include "magpol/effective_1d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "magpol/errors.hpp"
#include "magpol/spectral.hpp"

namespace magpol {
namespace {

constexpr double kFloorMargin = 1e-6;

class QuarticFunctional final : public MassConstrainedFunctional {
 public:
  explicit QuarticFunctional(double b) : b_(b) {}
  double kinetic_coefficient() const override { return 1.0; }
  double interaction_energy(const Field1D& f) const override { return -b_ * quartic(f); }
  std::vector<double> interaction_potential(const Field1D& f) const override {
    std::vector<double> v(f.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = -2.0 * b_ * f[j] * f[j];
    return v;
  }

 private:
  double b_;
};

/// Weighted functional with weights pre-sampled on the FFT bins of one grid.
class WeightedFunctional final : public MassConstrainedFunctional {
 public:
  WeightedFunctional(double kappa1, double lambda, std::vector<double> bin_weights)
      : kappa1_(kappa1), lambda_(lambda), w_(std::move(bin_weights)) {}

  double kinetic_coefficient() const override { return kappa1_; }

  double interaction_energy(const Field1D& f) const override {
    const auto spectrum = transform(f);
    const double h = f.grid().spacing();
    double s = 0.0;
    for (std::size_t m = 0; m < w_.size(); ++m) s += w_[m] * std::norm(spectrum[m]);
    return -lambda_ * f.grid().dual_spacing() * h * h * s;
  }

  std::vector<double> interaction_potential(const Field1D& f) const override {
    auto spectrum = transform(f);
    for (std::size_t m = 0; m < w_.size(); ++m) spectrum[m] *= w_[m];
    const auto back = spectral::inverse(spectrum);
    std::vector<double> v(back.size());
    const double c = -4.0 * std::numbers::pi * lambda_;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = c * back[j].real();
    return v;
  }

 private:
  static std::vector<std::complex<double>> transform(const Field1D& f) {
    std::vector<double> rho(f.size());
    for (std::size_t j = 0; j < rho.size(); ++j) rho[j] = f[j] * f[j];
    return spectral::forward(rho);
  }

  double kappa1_;
  double lambda_;
  std::vector<double> w_;
};

void require_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw DomainError("tolerance must be positive");
}

/// Gaussian of the given mass with the same second moment scale as a sech of
/// decay rate c, in rescaled units.
Field1D default_start(const Grid1D& g, double c, double mass) {
  const double width = 1.0 / std::max(c, 4.0 / g.half_width());
  return Field1D::sample(g, [width](double s) { return std::exp(-0.5 * (s / width) * (s / width)); })
      .normalized(mass);
}

/// Starting field supplied in physical units, mapped to rescaled units.
Field1D mapped_start(const Grid1D& g, const std::function<double(double)>& fn, double mu, double mass) {
  const double root = std::sqrt(mu);
  auto f = Field1D::sample(g, [&](double s) { return fn(s / mu) / root; });
  if (f.max_abs() == 0.0) throw InvalidField("initial field is identically zero");
  return f.normalized(mass);
}

OneDSolution to_physical(const FlowResult& r, double mu) {
  const double root = std::sqrt(mu);
  std::vector<double> v(r.field.values().begin(), r.field.values().end());
  for (double& x : v) x *= root;
  Field1D f(r.field.grid().scaled(mu), std::move(v));
  return {mu * mu * r.energy, std::move(f), r.iterations, mu * mu * r.residual, false};
}

}  // namespace

void OneDProblem::validate() const {
  if (!(mass_a > 0.0) || !std::isfinite(mass_a)) throw DomainError("mass a must be positive");
  if (!(coupling_b >= 0.0) || !std::isfinite(coupling_b))
    throw DomainError("coupling b must be nonnegative");
}

void WeightedProblem::validate() const {
  if (!(kappa1 > 0.0) || !std::isfinite(kappa1)) throw DomainError("kappa1 must be positive");
  if (!(prefactor_lambda >= 0.0) || !std::isfinite(prefactor_lambda))
    throw DomainError("lambda must be nonnegative");
  if (!(cutoff_K3 > 0.0)) throw DomainError("cutoff K3 must be positive");
  if (!weight) throw DomainError("weight function missing");
  const double sup = weight_sup();
  if (!std::isfinite(sup)) throw DomainError("weight is unbounded on the cutoff window");
}

double WeightedProblem::weight_sup() const {
  constexpr int samples = 2048;
  const double top = std::isfinite(cutoff_K3) ? cutoff_K3 : 1e3;
  double sup = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double w = weight(top * i / samples);
    if (!(w >= 0.0)) throw DomainError("weight must be nonnegative");
    sup = std::max(sup, w);
  }
  return sup;
}

double closed_form_profile(const OneDProblem& p, double t) {
  return 0.5 * p.mass_a * std::sqrt(p.coupling_b) / std::cosh(0.5 * p.mass_a * p.coupling_b * t);
}

Field1D closed_form_minimizer(const OneDProblem& p, const Grid1D& g) {
  p.validate();
  if (g.half_width() * p.mass_a * p.coupling_b < 40.0)
    throw DomainTooSmall("closed-form minimizer needs T a b >= 40");
  return Field1D::sample(g, [&p](double t) { return closed_form_profile(p, t); });
}

double closed_form_energy(const OneDProblem& p) {
  p.validate();
  return -p.coupling_b * p.coupling_b * p.mass_a * p.mass_a * p.mass_a / 12.0;
}

OneDSolution solve_numeric(const OneDProblem& p, const Grid1D& g, double tol,
                           const SolveOptions& options) {
  p.validate();
  require_tol(tol);
  const double a = p.mass_a;
  if (p.coupling_b == 0.0) {
    return {0.0, default_start(g, 0.0, a), 0, 0.0, true};
  }
  const double mu = std::max(1.0, a * p.coupling_b / 4.0);
  const double b = p.coupling_b / mu;

  Field1D start = options.initial ? mapped_start(g, options.initial, mu, a)
                                  : default_start(g, 0.5 * a * b, a);
  FlowOptions flow;
  flow.tol = tol;
  flow.max_iterations = options.max_iterations;
  flow.energy_floor = -(1.0 + kFloorMargin) * b * b * a * a * a / 12.0;
  const auto r = minimize_on_sphere(QuarticFunctional(b), start, a, flow);
  r.field.require_decayed();
  return to_physical(r, mu);
}

OneDSolution solve_weighted(const WeightedProblem& wp, const Grid1D& g, double tol,
                            const SolveOptions& options) {
  wp.validate();
  require_tol(tol);
  const double sup = wp.weight_sup();
  if (wp.prefactor_lambda == 0.0 || sup == 0.0) {
    return {0.0, default_start(g, 0.0, 1.0), 0, 0.0, true};
  }
  const double b_eff = 2.0 * std::numbers::pi * wp.prefactor_lambda * sup / wp.kappa1;
  const double mu = std::max(1.0, b_eff / 4.0);
  const double lambda = wp.prefactor_lambda / mu;
  const double cutoff = wp.cutoff_K3 / mu;

  std::vector<double> w(g.size());
  bool any = false;
  // Each bin stands for a cell of width dk; the bin straddling the cutoff
  // keeps only the fraction of its cell inside the window.
  const double dk = g.dual_spacing();
  for (std::size_t m = 0; m < g.size(); ++m) {
    const double k = std::abs(g.wavenumber(m));
    const double inside = std::clamp((cutoff - k) / dk + 0.5, 0.0, 1.0);
    if (inside > 0.0) {
      w[m] = inside * wp.weight(mu * k);
      any = any || w[m] > 0.0;
    }
  }
  if (!any) return {0.0, default_start(g, 0.0, 1.0), 0, 0.0, true};

  const double b_scaled = b_eff / mu;
  Field1D start = options.initial ? mapped_start(g, options.initial, mu, 1.0)
                                  : default_start(g, 0.5 * b_scaled, 1.0);
  FlowOptions flow;
  flow.tol = tol;
  flow.max_iterations = options.max_iterations;
  const double floor = -b_scaled * b_scaled * wp.kappa1 / 12.0;
  flow.energy_floor = (1.0 + kFloorMargin) * floor;
  const auto r = minimize_on_sphere(WeightedFunctional(wp.kappa1, lambda, std::move(w)), start, 1.0, flow);
  r.field.require_decayed();
  return to_physical(r, mu);
}

double gn_ratio(const Field1D& f) {
  const double m = mass(f);
  if (m == 0.0) throw InvalidField("GN ratio of the zero field");
  return std::pow(kinetic(f), 0.125) * std::pow(m, 0.375) / std::pow(quartic(f), 0.25);
}

double sharp_gn_constant(double q) {
  if (!(q > 2.0) || !std::isfinite(q)) throw DomainError("GN exponent q must exceed 2");
  // f = sech^p, p = 2/(q-2); int sech^s = B(s/2, 1/2).
  const double p = 2.0 / (q - 2.0);
  auto sech_int = [](double s) { return std::beta(0.5 * s, 0.5); };
  const double l2 = sech_int(2.0 * p);
  const double grad = p * p * (l2 - sech_int(2.0 * p + 2.0));
  const double lq = sech_int(p * q);
  const double theta = 0.5 - 1.0 / q;
  return std::pow(grad, 0.5 * theta) * std::pow(l2, 0.5 * (1.0 - theta)) / std::pow(lq, 1.0 / q);
}

double quartic_gap(const Field1D& f, double b) {
  const double m = mass(f);
  return kinetic(f) - b * quartic(f) + b * b * m * m * m / 12.0;
}

double distance_to_orbit(const Field1D& f, const OneDProblem& p) {
  p.validate();
  const auto& g = f.grid();
  double sum = 0.0;
  for (double v : f.values()) sum += v;
  const double sign = sum < 0.0 ? -1.0 : 1.0;
  auto dist2 = [&](double c) {
    double s = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double d = sign * f[j] - closed_form_profile(p, g.point(j) - c);
      s += d * d;
    }
    return s * g.spacing();
  };
  const double width = 2.0 / std::max(p.mass_a * p.coupling_b, 1e-300);
  double lo = centroid(f) - 0.5 * width, hi = centroid(f) + 0.5 * width;
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
  double f1 = dist2(x1), f2 = dist2(x2);
  while (hi - lo > 1e-12 * std::max(1.0, width)) {
    if (f1 < f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - ratio * (hi - lo); f1 = dist2(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + ratio * (hi - lo); f2 = dist2(x2);
    }
  }
  return std::sqrt(std::min(f1, f2));
}

}  // namespace magpol
