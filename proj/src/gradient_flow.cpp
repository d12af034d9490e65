#include "magpol/gradient_flow.hpp"

#include <algorithm>
#include <cmath>

#include "magpol/errors.hpp"

namespace magpol {
namespace {

struct Evaluation {
  double energy;
  std::vector<double> h_f;  // (-c d^2 + V) f
};

Evaluation evaluate(const MassConstrainedFunctional& functional, const Field1D& f) {
  const double c = functional.kinetic_coefficient();
  const auto& g = f.grid();
  auto lap = apply_fourier_multiplier(g, f.values(), [c](double k) { return c * k * k; });
  const auto v = functional.interaction_potential(f);
  double kin = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    kin += f[j] * lap[j];
    lap[j] += v[j] * f[j];
  }
  // <f, -c f''> equals c * kinetic(f) up to round-off; reuse it to save an FFT.
  return {kin * g.spacing() + functional.interaction_energy(f), std::move(lap)};
}

}  // namespace

FlowResult minimize_on_sphere(const MassConstrainedFunctional& functional, const Field1D& initial,
                              double target_mass, const FlowOptions& options) {
  const auto& g = initial.grid();
  const std::size_t n = g.size();
  const double h = g.spacing();
  const double c = functional.kinetic_coefficient();

  const bool recenter = options.recenter_every > 0;
  Field1D f = initial.normalized(target_mass);
  if (recenter) f = f.translated(-centroid(f));
  Evaluation ev = evaluate(functional, f);
  auto finish = [&](Field1D field, long it, double res, double chem) -> FlowResult {
    if (recenter) field = field.translated(-centroid(field));
    const double e = evaluate(functional, field).energy;
    return {std::move(field), e, it, res, chem};
  };
  constexpr int kMaxSettling = 200;
  int settling = 0;
  double step = 1.0;
  double mu = 0.0, residual = 0.0;

  for (long it = 1; it <= options.max_iterations; ++it) {
    double fhf = 0.0;
    for (std::size_t j = 0; j < n; ++j) fhf += f[j] * ev.h_f[j];
    mu = fhf * h / target_mass;

    std::vector<double> r(n);
    double rr = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      r[j] = ev.h_f[j] - mu * f[j];
      rr += r[j] * r[j];
    }
    residual = std::sqrt(rr * h / target_mass);

    const double shift = std::max(std::abs(mu), 1e-3 * c * g.dual_spacing() * g.dual_spacing());
    auto p = apply_fourier_multiplier(g, r, [c, shift](double k) { return 1.0 / (c * k * k + shift); });
    double fp = 0.0;
    for (std::size_t j = 0; j < n; ++j) fp += f[j] * p[j];
    const double proj = fp * h / target_mass;
    double slope = 0.0;  // <r, p>, positive for a descent direction
    for (std::size_t j = 0; j < n; ++j) {
      p[j] -= proj * f[j];
      slope += r[j] * p[j];
    }
    slope *= h;

    bool accepted = false;
    Field1D trial = f;
    Evaluation trial_ev;
    while (step > 1e-14) {
      std::vector<double> v(n);
      for (std::size_t j = 0; j < n; ++j) v[j] = f[j] - step * p[j];
      trial = Field1D(g, std::move(v)).normalized(target_mass);
      trial_ev = evaluate(functional, trial);
      if (trial_ev.energy <= ev.energy - 1e-4 * step * 2.0 * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }

    const double scale = std::max(1.0, std::abs(mu));
    if (!accepted) {
      // No descent possible at round-off level: the iterate is stationary.
      if (residual <= std::sqrt(options.tol) * scale) return finish(f, it, residual, mu);
      throw ConvergenceFailure("gradient flow: line search failed", residual, it);
    }

    const double change = std::abs(trial_ev.energy - ev.energy);
    f = std::move(trial);
    ev = std::move(trial_ev);
    step = std::min(step * 1.5, 4.0);

    if (ev.energy < options.energy_floor)
      throw ConvergenceFailure("gradient flow: energy fell below the analytic floor", residual, it);

    if (recenter && it % options.recenter_every == 0) {
      f = f.translated(-centroid(f));
      ev = evaluate(functional, f);
    }

    if (change <= options.tol * std::max(std::abs(ev.energy), 1e-300) &&
        residual <= std::sqrt(options.tol) * scale) {
      // Far-field components carry almost no energy and fade slowly; keep
      // iterating for a while so they drop below the box-decay threshold.
      const bool clean = (recenter ? f.translated(-centroid(f)) : f).decayed();
      if (clean || ++settling > kMaxSettling) return finish(f, it, residual, mu);
    }
  }
  throw ConvergenceFailure("gradient flow: iteration limit reached", residual, options.max_iterations);
}

}  // namespace magpol
