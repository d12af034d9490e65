#include "magpol/pekar.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "magpol/coulomb.hpp"
#include "magpol/errors.hpp"
#include "magpol/quadrature.hpp"

namespace magpol {
namespace {

using std::numbers::pi;

class PekarFunctional final : public MassConstrainedFunctional {
 public:
  PekarFunctional(const Grid1D& g, double B, double alpha) : conv_(landau_coulomb(g, B)), alpha_(alpha) {}

  double kinetic_coefficient() const override { return 1.0; }
  double interaction_energy(const Field1D& f) const override {
    return -alpha_ * conv_.energy(DensityProfile::from_field(f));
  }
  std::vector<double> interaction_potential(const Field1D& f) const override {
    std::vector<double> rho(f.size());
    for (std::size_t j = 0; j < rho.size(); ++j) rho[j] = f[j] * f[j];
    auto v = conv_.apply(rho);
    for (double& x : v) x *= -alpha_;
    return v;
  }

 private:
  KernelConvolution conv_;
  double alpha_;
};

void require_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw DomainError("tolerance must be positive");
}

/// pi int_0^inf e^{-s/B} / (s + k^2) ds, the transverse k-integral of
/// e^{-|k_perp|^2/B} / |k|^2, by quadrature in u = ln s.
double transverse_k_integral(double k, double B) {
  const double k2 = k * k;
  const double lo = std::log(k2) - 40.0;
  const double hi = std::log(B) + std::log(60.0);
  auto g = [&](double u) {
    const double s = std::exp(u);
    return std::exp(-s / B) * s / (s + k2);
  };
  const double width = hi - lo;
  const auto panels = static_cast<std::size_t>(std::ceil(width));
  // Below e^lo the integrand is s/k^2 to relative 1e-17.
  return pi * (quad::composite(g, lo, hi, panels, 20) + std::exp(lo) / k2);
}

}  // namespace

void PhysParams::validate() const {
  if (!(B > 1.0) || !std::isfinite(B)) throw DomainError("field strength B must exceed 1");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("coupling alpha must be nonnegative");
}

void PekarProductState::validate() const {
  params.validate();
  const double m = mass(f);
  if (!(std::abs(m - 1.0) <= 1e-8)) throw InvalidField("product state must have unit mass");
}

EnergyBreakdown pekar_energy(const PekarProductState& s) {
  s.validate();
  EnergyBreakdown e;
  e.transverse = s.params.B;
  e.longitudinal_kinetic = kinetic(s.f);
  if (s.params.alpha != 0.0) {
    const auto d = coulomb_D_dual(s.f, s.params.B);
    e.coulomb = -s.params.alpha * d.real_space;
    e.dual_gap = d.relative_gap;
  }
  e.total = e.transverse + e.longitudinal_kinetic + e.coulomb;
  return e;
}

PekarProductState trial_state(const PhysParams& p) {
  p.validate();
  if (!(p.B > std::numbers::e)) throw DomainError("trial state needs B > e");
  const double L = std::log(p.B);
  const OneDProblem prof{1.0, 0.5 * L};
  const Grid1D g(4096, 100.0 / L);
  return {p, closed_form_minimizer(prof, g)};
}

EnergyBreakdown trial_energy(const PhysParams& p) { return pekar_energy(trial_state(p)); }

Grid1D GridPolicy::grid_for(const PhysParams& p) const {
  p.validate();
  return Grid1D(n, base_T / std::max(1.0, p.alpha * std::log(p.B) / 4.0));
}

PekarResult pekar_minimize(const PhysParams& p, const Grid1D& g, double tol, const SolveOptions& options) {
  p.validate();
  require_tol(tol);
  const double L = std::log(p.B);
  if (p.alpha == 0.0) {
    // Infimum B + 0 is approached by spreading f; not attained.
    OneDSolution sol{p.B, Field1D::sample(g, [&](double t) { return std::exp(-0.5 * t * t / 4.0); }).normalized(1.0),
                     0, 0.0, true};
    EnergyBreakdown e;
    e.transverse = p.B;
    e.total = p.B;
    return {std::move(sol), e};
  }

  // Start from the local-limit profile f_{1, alpha ln B / 2}.
  const double b0 = 0.5 * p.alpha * std::max(L, 1.0);
  const auto start = options.initial ? Field1D::sample(g, options.initial).normalized(1.0)
                                     : Field1D::sample(g, [&](double t) {
                                         return closed_form_profile({1.0, b0}, t);
                                       }).normalized(1.0);
  FlowOptions flow;
  flow.tol = tol;
  flow.max_iterations = options.max_iterations;
  const PekarFunctional fn(g, p.B, p.alpha);
  const auto r = minimize_on_sphere(fn, start, 1.0, flow);
  r.field.require_decayed();

  PekarResult out{{p.B + r.energy, r.field, r.iterations, r.residual, false}, {}};
  out.energy = pekar_energy({p, r.field});
  out.solution.energy = out.energy.total;
  return out;
}

PekarResult pekar_minimize(const PhysParams& p, double tol, const GridPolicy& policy) {
  return pekar_minimize(p, policy.grid_for(p), tol);
}

ScalingCheck scaling_identity_check(double B, double alpha, const Field1D& f) {
  if (!(alpha > 0.0)) throw DomainError("scaling check needs alpha > 0");
  const PhysParams scaled{B, alpha};
  const PhysParams unit{B / (alpha * alpha), 1.0};
  scaled.validate();
  unit.validate();

  const double root = std::sqrt(alpha);
  std::vector<double> v(f.values().begin(), f.values().end());
  for (double& x : v) x *= root;
  const Field1D fa(f.grid().scaled(alpha), std::move(v));

  ScalingCheck c;
  c.lhs = pekar_energy({scaled, fa}).total;
  c.rhs = alpha * alpha * pekar_energy({unit, f}).total;
  c.relative_gap = std::abs(c.lhs - c.rhs) / std::max(std::abs(c.lhs), std::abs(c.rhs));
  c.margin = 1e-8 - c.relative_gap;
  c.pass = c.margin >= 0.0;
  return c;
}

double coherent_energy(const PekarProductState& s, double amplitude_scale) {
  s.validate();
  const double base = s.params.B + kinetic(s.f);
  if (s.params.alpha == 0.0 || amplitude_scale == 0.0) return base;

  const auto rho = DensityProfile::from_field(s.f);
  const auto spec = density_fourier(rho);
  const double peak = std::abs(spec.values[0]);
  const double dk = spec.dual_spacing;
  double kend = 0.0;
  for (std::size_t m = 0; m < spec.values.size(); ++m)
    if (std::abs(spec.values[m]) > 1e-14 * peak) kend = std::max(kend, std::abs(spec.wavenumbers[m]));
  kend = std::min(kend + 2.0 * dk, s.f.grid().nyquist());

  // J = int d^3k |rho_hat(k)|^2 / |k|^2, the transverse factor of rho_hat
  // being e^{-|k_perp|^2 / 2B}.
  auto integrand = [&](double k) {
    return std::norm(density_fourier_at(rho, k)) * transverse_k_integral(k, s.params.B);
  };
  double half = quad::graded(integrand, 0.0, dk, 40, 20);
  if (kend > dk)
    half += quad::composite(integrand, dk, kend, static_cast<std::size_t>(std::ceil((kend - dk) / (2.0 * dk))), 20);
  const double J = 2.0 * half;

  // int |a|^2 + 2 Re int (sqrt(alpha) / 2 pi) a rho_hat / |k| at a = t a_opt.
  const double t = amplitude_scale;
  const double c = s.params.alpha / (4.0 * pi * pi);
  return base + c * t * t * J - 2.0 * c * t * J;
}

double coherent_infimum(const PekarProductState& s) { return coherent_energy(s, 1.0); }

std::vector<SweepPoint> sweep(const std::vector<double>& Bs, double alpha, double tol, const GridPolicy& policy,
                              unsigned workers) {
  for (double B : Bs) PhysParams{B, alpha}.validate();
  std::vector<SweepPoint> out(Bs.size());
  std::vector<std::exception_ptr> errors(Bs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < Bs.size(); i = next++) {
      try {
        const PhysParams p{Bs[i], alpha};
        const auto r = pekar_minimize(p, tol, policy);
        out[i] = {p, r.energy, trial_energy(p), r.solution.iterations, r.solution.gradient_residual};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, Bs.size())));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::stable_sort(out.begin(), out.end(),
                   [](const SweepPoint& a, const SweepPoint& b) { return a.params.B < b.params.B; });
  return out;
}

AsymptoticFit fit_asymptotics(const std::vector<double>& Bs, const std::vector<double>& binding) {
  if (Bs.size() != binding.size()) throw FitError("B list and energies differ in length");
  if (Bs.size() < 4) throw FitError("asymptotic fit needs at least 4 points");
  const auto n = static_cast<Eigen::Index>(Bs.size());
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(Bs[i] > std::exp(1.0)) || !std::isfinite(binding[i])) throw FitError("fit points need B > e and finite E");
    const double X = std::log(Bs[i]);
    const double Y = std::log(X);
    A(i, 0) = -X * X;
    A(i, 1) = X * Y;
    A(i, 2) = X;
    y(i) = binding[i];
  }
  // Column scaling keeps the rank decision independent of the magnitude of X.
  const Eigen::VectorXd scale = A.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < 3; ++j) {
    if (scale(j) == 0.0) throw FitError("degenerate regressor");
    A.col(j) /= scale(j);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-10);
  if (qr.rank() < 3) throw FitError("regressors are collinear on this B window");
  const Eigen::VectorXd c = qr.solve(y).cwiseQuotient(scale);
  for (Eigen::Index j = 0; j < 3; ++j) A.col(j) *= scale(j);

  AsymptoticFit fit;
  fit.c2 = c(0);
  fit.c3 = c(1);
  fit.c4 = c(2);
  fit.residual_rms = std::sqrt((A * c - y).squaredNorm() / static_cast<double>(n));
  fit.fit_window = Bs;
  return fit;
}

AsymptoticFit fit_asymptotics(const std::vector<SweepPoint>& points) {
  std::vector<double> Bs, E;
  for (const auto& p : points) {
    Bs.push_back(p.params.B);
    E.push_back(p.minimum.binding());
  }
  return fit_asymptotics(Bs, E);
}

}  // namespace magpol
