#pragma once

#include <vector>

#include "magpol/grid.hpp"

namespace magpol {

/// Energy of the form  c * int |f'|^2 + P[f^2]  minimized over fields of fixed
/// mass. Implementations provide P and its functional derivative dP/drho.
class MassConstrainedFunctional {
 public:
  virtual ~MassConstrainedFunctional() = default;

  virtual double kinetic_coefficient() const = 0;
  virtual double interaction_energy(const Field1D& f) const = 0;
  /// dP/drho(t_j); the L2 gradient of the full energy is 2(-c f'' + V f).
  virtual std::vector<double> interaction_potential(const Field1D& f) const = 0;

  double energy(const Field1D& f) const {
    return kinetic_coefficient() * kinetic(f) + interaction_energy(f);
  }
};

struct FlowOptions {
  double tol = 1e-10;
  long max_iterations = 20000;
  /// Re-center the iterate at its density centroid every this many steps, and
  /// at start and finish (0: never).
  int recenter_every = 50;
  /// Lowest energy the functional can reach; going below it signals a numerical
  /// instability and aborts the flow.
  double energy_floor = -1e300;
};

struct FlowResult {
  Field1D field;
  double energy = 0.0;
  long iterations = 0;
  /// ||H f - mu f|| / ||f|| at the returned field.
  double residual = 0.0;
  double chemical_potential = 0.0;
};

/// Projected, preconditioned gradient flow on the sphere {mass(f) = target}.
/// Each step moves along -(c k^2 + s)^{-1} (H f - mu f), retracts by
/// renormalizing, and backtracks until the energy decreases (Armijo).
/// Stops when the relative energy change is below tol and the projected
/// gradient norm is below sqrt(tol) * max(1, |mu|).
/// Throws ConvergenceFailure after max_iterations.
FlowResult minimize_on_sphere(const MassConstrainedFunctional& functional, const Field1D& initial,
                              double target_mass, const FlowOptions& options);

}  // namespace magpol
