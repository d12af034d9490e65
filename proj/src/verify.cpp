#include "magpol/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "magpol/certificate.hpp"
#include "magpol/coulomb.hpp"
#include "magpol/effective_1d.hpp"
#include "magpol/errors.hpp"
#include "magpol/landau.hpp"
#include "magpol/pekar.hpp"
#include "magpol/quadrature.hpp"

namespace magpol::verify {
namespace {

using cplx = std::complex<double>;
using std::numbers::pi;

cplx tensor_gl(const std::function<cplx(double, double)>& f, double L, int panels) {
  const auto& rule = quad::gauss_legendre(20);
  const double w = 2.0 * L / panels;
  std::vector<double> x, wx;
  for (int p = 0; p < panels; ++p) {
    const double c = -L + w * (p + 0.5);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      x.push_back(c + 0.5 * w * rule.nodes[i]);
      wx.push_back(0.5 * w * rule.weights[i]);
    }
  }
  cplx s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) s += wx[i] * wx[j] * f(x[i], x[j]);
  return s;
}

InvariantResult below(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), value <= threshold, value, threshold, std::move(detail)};
}

InvariantResult above(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), value >= threshold, value, threshold, std::move(detail)};
}

/// Sum of 1-4 Gaussians, unit mass, centred within +-5.
Field1D random_field(const Grid1D& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_real_distribution<double> centre(-5.0, 5.0), width(0.4, 2.5), amp(-1.0, 1.0);
  const int n = count(rng);
  std::vector<double> c(n), w(n), a(n);
  for (int i = 0; i < n; ++i) {
    c[i] = centre(rng);
    w[i] = width(rng);
    a[i] = i == 0 ? 1.0 + std::abs(amp(rng)) : amp(rng);
  }
  return Field1D::sample(g, [&](double t) {
           double s = 0.0;
           for (int i = 0; i < n; ++i) s += a[i] * std::exp(-0.5 * std::pow((t - c[i]) / w[i], 2));
           return s;
         }).normalized(1.0);
}

template <class F>
void guarded(Report& r, const std::string& name, F&& body) {
  try {
    body(r);
  } catch (const std::exception& e) {
    r.results.push_back({name, false, 0.0, 0.0, std::string("exception: ") + e.what()});
  }
}

double default_K(double B) { return B * std::pow(std::log(B), -4.0 / 3.0); }

}  // namespace

bool Report::all_pass() const noexcept {
  return !results.empty() && std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
}

cplx integrate_square(const std::function<cplx(double, double)>& f, double L, double tol, double* error) {
  cplx prev = tensor_gl(f, L, 4);
  for (int panels = 8; panels <= 128; panels *= 2) {
    const cplx cur = tensor_gl(f, L, panels);
    const double change = std::abs(cur - prev);
    if (change <= tol) {
      if (error) *error = change;
      return cur;
    }
    prev = cur;
  }
  throw QuadratureError("2D tensor quadrature did not settle");
}

InvariantResult p0_hermiticity(double B, int samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    worst = std::max(worst, std::abs(p0_kernel(a, b, c, d, B) - std::conj(p0_kernel(c, d, a, b, B))));
  }
  return below("landau.p0_hermitian", worst, 1e-8);
}

InvariantResult p0_idempotency(double B, int samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  const double s = 1.0 / std::sqrt(B);
  std::uniform_real_distribution<double> u(-2.0 * s, 2.0 * s);
  double worst = 0.0, qerr = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    double e = 0.0;
    const cplx lhs = integrate_square(
        [&](double z1, double z2) { return p0_kernel(a, b, z1, z2, B) * p0_kernel(z1, z2, c, d, B); }, 14.0 * s,
        1e-11 * B, &e);
    worst = std::max(worst, std::abs(lhs - p0_kernel(a, b, c, d, B)) / B);
    qerr = std::max(qerr, e / B);
  }
  std::ostringstream os;
  os << "quadrature change " << qerr;
  return below("landau.p0_idempotent", worst, 1e-8, os.str());
}

InvariantResult phase_identity(double k1, double k2, double B) {
  const double s = 1.0 / std::sqrt(B);
  const double z1 = 0.3 * s, z2 = -0.4 * s, y1 = 0.5 * s, y2 = 0.2 * s;
  double e = 0.0;
  const cplx lhs = integrate_square(
      [&](double x1, double x2) {
        return p0_kernel(z1, z2, x1, x2, B) * std::polar(1.0, k1 * x1 + k2 * x2) * p0_kernel(x1, x2, y1, y2, B);
      },
      14.0 * s + std::hypot(k1, k2) / B, 1e-11 * B, &e);
  const cplx rhs = projected_phase_factor(k1, k2, B) * i_kperp_kernel(k1, k2, z1, z2, y1, y2, B);
  std::ostringstream os;
  os << "k = (" << k1 << ", " << k2 << "), B = " << B << ", quadrature change " << e / B;
  return below("landau.phase_identity", std::abs(lhs - rhs) / B, 1e-8, os.str());
}

Report run_suite() {
  Report r;
  const double c4 = std::pow(3.0, 0.125);

  guarded(r, "oned.closed_form", [](Report& rep) {
    const OneDProblem p{1.0, 1.0};
    const auto s = solve_numeric(p, Grid1D(4096, 40.0), 1e-10);
    rep.results.push_back(below("oned.closed_form_energy", std::abs(s.energy + 1.0 / 12.0), 1e-6));
    rep.results.push_back(below("oned.orbit_distance", distance_to_orbit(s.minimizer, p), 1e-4));
  });

  guarded(r, "oned.gagliardo_nirenberg", [c4](Report& rep) {
    const Grid1D g(4096, 40.0);
    rep.results.push_back(
        below("oned.gn_extremizer", std::abs(gn_ratio(closed_form_minimizer({1.0, 1.0}, g)) - c4), 1e-6));
    std::mt19937_64 rng(2024);
    double worst = 1e300, gap = 1e300;
    for (int i = 0; i < 50; ++i) {
      const auto f = random_field(g, rng);
      worst = std::min(worst, gn_ratio(f) - c4);
      gap = std::min(gap, quartic_gap(f, 1.0));
    }
    rep.results.push_back(above("oned.gn_lower_bound", worst, -1e-9));
    rep.results.push_back(above("oned.quartic_gap", gap, -1e-6));
  });

  guarded(r, "landau", [](Report& rep) {
    rep.results.push_back(p0_hermiticity(1.0, 20, 7));
    rep.results.push_back(p0_idempotency(1.0, 2, 11));
    rep.results.push_back(phase_identity(0.7, -0.9, 1.3));
    const auto g = TransverseGaussian(1.0);
    const auto c = i_kperp_norm_bound_check(1.0, 0.0, 1.0, [g](double a, double b) { return cplx(g(a, b), 0.0); });
    rep.results.push_back({"landau.ik_norm_bound", c.pass, c.value, c.bound, {}});
  });

  guarded(r, "coulomb", [](Report& rep) {
    double gap = 0.0;
    for (auto [b, B] : {std::pair{1.0, 1.0}, {3.0, std::exp(6.0)}, {6.0, 1e12}}) {
      const auto f = closed_form_minimizer({1.0, b}, Grid1D(4096, 40.0));
      gap = std::max(gap, coulomb_D_dual(f, B).relative_gap);
    }
    rep.results.push_back(below("coulomb.dual_path", gap, 1e-7));
    bool closes = true, bounded = true;
    double worst = 0.0;
    for (double X : {6.0, 10.0}) {
      const auto l = decompose(trial_state({std::exp(X), 1.0}).f, std::exp(X));
      closes = closes && l.closes();
      bounded = bounded && l.r1_within_bound();
      worst = std::max(worst, std::abs(l.R1) / l.R1_bound);
    }
    rep.results.push_back({"coulomb.decomposition_closes", closes, 0.0, 0.0, {}});
    rep.results.push_back({"coulomb.r1_bound", bounded, worst, 1.0, "max |R1| / bound"});
    const auto f = closed_form_minimizer({1.0, 1.0}, Grid1D(512, 40.0));
    const auto c = offdiag_bound_check(0.5, std::sqrt(0.5), std::sqrt(0.5), f, 1.0);
    rep.results.push_back({"coulomb.offdiag_bound", c.pass, c.lhs, c.rhs, {}});
  });

  guarded(r, "pekar", [](Report& rep) {
    const PhysParams p{std::exp(10.0), 1.0};
    const auto m = pekar_minimize(p, 1e-10);
    const auto t = trial_energy(p);
    rep.results.push_back(below("pekar.trial_upper_bound", m.energy.binding() - t.binding(), 0.0));
    const PekarProductState s{{std::exp(6.0), 1.0}, closed_form_minimizer({1.0, 1.0}, Grid1D(4096, 40.0))};
    const double e = pekar_energy(s).total;
    rep.results.push_back(below("pekar.coherent_infimum", std::abs(coherent_infimum(s) - e) / std::abs(e), 1e-8));
    const auto sc = scaling_identity_check(std::exp(8.0), 2.0, closed_form_minimizer({1.0, 2.0}, Grid1D(4096, 40.0)));
    rep.results.push_back(below("pekar.scaling_identity", sc.relative_gap, 1e-8));
  });

  guarded(r, "certificate", [](Report& rep) {
    const double B = std::exp(12.0);
    const auto cert = certify_p0(B, 1.0, default_K(B));
    rep.results.push_back({"certificate.valid", cert.valid(), 0.0, 0.0, {}});
    rep.results.push_back({"certificate.ledger_exact", cert.p0_bound == cert.recompute_p0(), cert.p0_bound,
                           cert.recompute_p0(), {}});
    const auto& l = cert.ledger;
    rep.results.push_back({"certificate.kappa_order", l.kappa1 <= l.kappa && l.kappa2 <= l.kappa && l.kappa1 > 0.0,
                           l.kappa1, l.kappa, {}});
    rep.results.push_back(
        above("certificate.I_envelope", cert.I_value,
              effective_I_envelope(l.kappa1, cert.cutoffs.gamma, cert.cutoffs.Kperp, 1.0)));
    const auto m = pekar_minimize({B, 1.0}, 1e-10);
    rep.results.push_back(below("certificate.sandwich", cert.p0_bound - B, m.energy.binding()));
  });
  return r;
}

}  // namespace magpol::verify
