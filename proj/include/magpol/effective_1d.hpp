#pragma once

#include <functional>
#include <optional>

#include "magpol/gradient_flow.hpp"
#include "magpol/grid.hpp"

namespace magpol {

/// Minimize int |f'|^2 - b int f^4 subject to int f^2 = a.
struct OneDProblem {
  double mass_a = 1.0;
  double coupling_b = 1.0;

  void validate() const;
};

struct OneDSolution {
  double energy = 0.0;
  Field1D minimizer;
  long iterations = 0;
  double gradient_residual = 0.0;
  /// Set when the coupling vanishes: the infimum 0 is not attained and
  /// `minimizer` is only the normalized starting field.
  bool zero_coupling = false;
};

/// kappa1 * int |f'|^2 - lambda * int_{|k| <= K3} w(k) |rho_hat(k)|^2 dk over
/// unit-mass f, rho = f^2. The weight must be even, nonnegative and bounded on
/// the cutoff window.
struct WeightedProblem {
  double kappa1 = 1.0;
  double prefactor_lambda = 0.0;
  std::function<double(double)> weight;
  double cutoff_K3 = 1.0;

  void validate() const;
  /// sup of w on [0, K3], sampled.
  double weight_sup() const;
};

struct SolveOptions {
  double tol = 1e-10;
  long max_iterations = 20000;
  /// Starting field as a function of t; a centered sech of the expected
  /// width when empty.
  std::function<double(double)> initial;
};

/// f_{a,b}(t) = (a sqrt(b) / 2) / cosh(a b t / 2).
double closed_form_profile(const OneDProblem& p, double t);
/// Samples f_{a,b}; throws DomainTooSmall unless T a b >= 40.
Field1D closed_form_minimizer(const OneDProblem& p, const Grid1D& g);
/// -b^2 a^3 / 12.
double closed_form_energy(const OneDProblem& p);

/// Numerical minimizer on g (interpreted in rescaled units, see solve
/// internals). The returned minimizer lives on g.scaled(mu) with
/// mu = max(1, ab/4), i.e. half-width T/mu.
OneDSolution solve_numeric(const OneDProblem& p, const Grid1D& g, double tol,
                           const SolveOptions& options = {});

OneDSolution solve_weighted(const WeightedProblem& wp, const Grid1D& g, double tol,
                            const SolveOptions& options = {});

/// ||f'||^{1/4} ||f||^{3/4} / ||f||_4.
double gn_ratio(const Field1D& f);
/// Sharp constant of ||g'||^theta ||g||^{1-theta} >= C_q ||g||_q, theta = 1/2 - 1/q,
/// evaluated at the sech^{2/(q-2)} extremizer. sharp_gn_constant(4) = 3^{1/8}.
double sharp_gn_constant(double q);
/// kinetic(f) - b quartic(f) + (b^2/12) mass(f)^3, nonnegative up to grid error.
double quartic_gap(const Field1D& f, double b);

/// min over shifts c and sign of || |f| - f_{a,b}(. - c) ||_2.
double distance_to_orbit(const Field1D& f, const OneDProblem& p);

}  // namespace magpol
