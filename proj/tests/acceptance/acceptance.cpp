// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "magpol/certificate.hpp"
#include "magpol/cli/commands.hpp"
#include "magpol/coulomb.hpp"
#include "magpol/effective_1d.hpp"
#include "magpol/landau.hpp"
#include "magpol/pekar.hpp"
#include "magpol/verify.hpp"
#include "support/oracles.hpp"

using namespace magpol;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(t < limit_seconds, "runtime " + num(t) + " s over " + num(limit_seconds) + " s");
  if (!o.pass) ++failures;
  std::printf("%s %2d %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", id, name, t, o.detail.empty() ? "" : ": ",
              o.detail.c_str());
  std::fflush(stdout);
}

double default_K(double B) { return B * std::pow(std::log(B), -4.0 / 3.0); }

}  // namespace

int main() {
  criterion(1, "closed-form 1D energy", 1.0, [](Outcome& o) {
    const OneDProblem p{1.0, 1.0};
    const auto s = solve_numeric(p, Grid1D(4096, 40.0), 1e-10);
    const double err = std::abs(s.energy + 1.0 / 12.0);
    const double dist = distance_to_orbit(s.minimizer, p);
    o.require(err <= 1e-6, "energy error " + num(err));
    o.require(dist <= 1e-4, "orbit distance " + num(dist));
    o.detail = "energy error " + num(err) + ", orbit distance " + num(dist) + o.detail;
  });

  criterion(2, "scaling family", 5.0, [](Outcome& o) {
    double worst = 0.0;
    for (auto [a, b] : {std::pair{2.0, 1.0}, {1.0, 3.0}, {0.5, 2.0}, {1.0, 10.0}}) {
      const OneDProblem p{a, b};
      const double exact = closed_form_energy(p);
      const double rel = std::abs(solve_numeric(p, Grid1D(4096, 40.0), 1e-10).energy - exact) / std::abs(exact);
      worst = std::max(worst, rel);
      o.require(rel <= 1e-5, "(a,b) = (" + num(a) + "," + num(b) + ") relative error " + num(rel));
    }
    if (o.pass) o.detail = "worst relative error " + num(worst);
  });

  criterion(3, "sharp Gagliardo-Nirenberg constant", 30.0, [](Outcome& o) {
    const double c4 = std::pow(3.0, 0.125);
    const Grid1D g(4096, 40.0);
    const double r = gn_ratio(closed_form_minimizer({1.0, 1.0}, g));
    o.require(std::abs(r - c4) <= 1e-6, "extremizer ratio off by " + num(r - c4));
    std::mt19937_64 rng(20240601);
    double worst = 1e300, gap = 1e300;
    for (int i = 0; i < 200; ++i) {
      const auto f = oracle::random_field(g, rng);
      worst = std::min(worst, gn_ratio(f) - c4);
      for (double b : {0.3, 1.0, 3.0}) gap = std::min(gap, quartic_gap(f, b));
    }
    o.require(worst >= -1e-9, "random field below C4 by " + num(-worst));
    o.require(gap >= -1e-6, "quartic gap " + num(gap));
    if (o.pass) o.detail = "min ratio - C4 = " + num(worst) + ", min gap = " + num(gap);
  });

  criterion(4, "effective potential oracles", 120.0, [](Outcome& o) {
    double worst = 0.0;
    for (double B : {1.0, 100.0})
      for (double z : {0.0, 0.1, 1.0, 10.0}) {
        const double ref = oracle::veff_2d(z, B);
        const double rel = std::abs(effective_potential(z, B) - ref) / ref;
        worst = std::max(worst, rel);
        o.require(rel <= 1e-7, "V_eff(" + num(z) + "; " + num(B) + ") relative error " + num(rel));
      }
    double gap = 0.0;
    for (auto [b, B] : {std::pair{1.0, 1.0}, {10.0, 1e6}, {3.0, std::exp(6.0)}, {6.0, 1e12}, {0.7, 30.0}}) {
      const auto f = closed_form_minimizer({1.0, b}, Grid1D(4096, std::max(40.0, 60.0 / b)));
      const auto d = coulomb_D_dual(f, B);
      gap = std::max(gap, d.relative_gap);
      o.require(d.relative_gap <= 1e-7, "dual-path gap " + num(d.relative_gap));
    }
    if (o.pass) o.detail = "V_eff worst " + num(worst) + ", dual-path worst " + num(gap);
  });

  criterion(5, "trial state and upper bound", 30.0, [](Outcome& o) {
    const TransverseGaussian g(std::exp(10.0));
    const double gnorm =
        oracle::integrate([&](double r) { return 2 * std::numbers::pi * r * g.density(r); }, 0.0, 40.0 / std::sqrt(std::exp(10.0)));
    o.require(std::abs(gnorm - 1.0) <= 1e-12, "transverse norm " + num(gnorm));
    double kin_err = 0.0;
    for (double X : {10.0, 14.0, 18.0}) {
      const PhysParams p{std::exp(X), 1.0};
      const auto s = trial_state(p);
      o.require(std::abs(mass(s.f) - 1.0) <= 1e-12, "longitudinal norm at X = " + num(X));
      const auto t = pekar_energy(s);
      o.require(t.transverse == p.B, "transverse energy differs from B");
      kin_err = std::max(kin_err, std::abs(t.longitudinal_kinetic - X * X / 48.0));
      const auto m = pekar_minimize(p, 1e-10);
      o.require(m.energy.total <= t.total && m.energy.binding() <= t.binding(),
                "minimum above trial at X = " + num(X));
    }
    o.require(kin_err <= 1e-10, "kinetic error " + num(kin_err));
    if (o.pass) o.detail = "kinetic error " + num(kin_err);
  });

  criterion(6, "decomposition closure", 60.0, [](Outcome& o) {
    double worst = 0.0;
    for (double X : {6.0, 10.0}) {
      const double B = std::exp(X);
      const auto l = decompose(trial_state({B, 1.0}).f, B);
      o.require(l.closes(), "ledger does not close at X = " + num(X));
      o.require(l.r1_within_bound(), "|R1| above bound at X = " + num(X));
      worst = std::max(worst, std::abs(l.R1) / l.R1_bound);
    }
    if (o.pass) o.detail = "max |R1| / bound = " + num(worst);
  });

  criterion(7, "projection inequalities", 120.0, [](Outcome& o) {
    const auto f = closed_form_minimizer({1.0, 1.0}, Grid1D(512, 40.0));
    double min_margin = 1e300;
    for (auto [c0, c1] : {std::pair{std::sqrt(0.5), std::sqrt(0.5)}, {0.8, 0.6}, {0.6, 0.8}}) {
      const auto terms = offdiag_terms(c0, c1, f, 1.0);
      for (double eps : {0.25, 1.0}) {
        const auto c = offdiag_bound_check(eps, terms);
        o.require(c.pass, "off-diagonal bound fails at c1 = " + num(c1) + ", eps = " + num(eps));
        min_margin = std::min(min_margin, c.margin);
      }
    }
    for (const auto& r : {verify::p0_hermiticity(1.0, 50, 3), verify::p0_hermiticity(7.0, 50, 4),
                          verify::p0_idempotency(1.0, 3, 5), verify::p0_idempotency(4.0, 2, 6),
                          verify::phase_identity(0.7, -0.9, 1.3), verify::phase_identity(2.0, 1.0, 0.8)})
      o.require(r.pass, r.name + " error " + num(r.value));
    if (o.pass) o.detail = "min margin " + num(min_margin);
  });

  criterion(8, "Pekar connection", 10.0, [](Outcome& o) {
    double worst = 0.0;
    for (auto [B, alpha, b] : {std::tuple{std::exp(6.0), 1.0, 1.0}, {30.0, 2.0, 3.0}, {1e8, 0.5, 6.0},
                               {std::exp(20.0), 1.0, 10.0}, {std::exp(10.0), 1.0, 5.0}}) {
      const PekarProductState s{{B, alpha}, closed_form_minimizer({1.0, b}, Grid1D(4096, 40.0))};
      const double e = pekar_energy(s).total;
      const double rel = std::abs(coherent_infimum(s) - e) / std::abs(e);
      worst = std::max(worst, rel);
      o.require(rel <= 1e-8, "relative gap " + num(rel) + " at B = " + num(B));
    }
    if (o.pass) o.detail = "worst relative gap " + num(worst);
  });

  criterion(9, "asymptotic fit", 180.0, [](Outcome& o) {
    std::vector<double> Bs, synth;
    for (int X = 10; X <= 30; X += 2) {
      const double x = X;
      Bs.push_back(std::exp(x));
      synth.push_back(-x * x / 48.0 + x * std::log(x) / 12.0 + 0.3 * x);
    }
    const auto s = fit_asymptotics(Bs, synth);
    o.require(std::abs(s.c2 - 1.0 / 48.0) <= 1e-9 && std::abs(s.c3 - 1.0 / 12.0) <= 1e-9 && std::abs(s.c4 - 0.3) <= 1e-9,
              "synthetic coefficients not recovered");
    const auto fit = fit_asymptotics(sweep(Bs, 1.0, 1e-10));
    const double rel = std::abs(fit.c2 * 48.0 - 1.0);
    o.require(rel <= 0.25, "c2 = " + num(fit.c2) + " off by " + num(rel));
    o.require(fit.c3 > 0.0, "c3 = " + num(fit.c3));
    o.detail = "c2 = " + num(fit.c2) + " (" + num(fit.c2 * 48.0) + " x 1/48), c3 = " + num(fit.c3) + ", c4 = " +
               num(fit.c4) + ", rms " + num(fit.residual_rms) + o.detail;
  });

  criterion(10, "certificate sanity", 120.0, [](Outcome& o) {
    double prev = 1e300;
    std::string ratios;
    for (double X : {12.0, 16.0, 20.0}) {
      const double B = std::exp(X);
      const auto cert = certify_p0(B, 1.0, default_K(B));
      o.require(cert.valid(), "invalid certificate at X = " + num(X));
      const auto m = pekar_minimize({B, 1.0}, 1e-10);
      o.require(cert.p0_bound - B <= m.energy.binding(), "p0 above Pekar minimum at X = " + num(X));
      const auto& l = cert.ledger;
      o.require(cert.I_value >= effective_I_envelope(l.kappa1, cert.cutoffs.gamma, cert.cutoffs.Kperp, 1.0),
                "I below envelope at X = " + num(X));
      const double ratio = (B - cert.p0_bound) / (X * X);
      o.require(ratio < prev, "(B - p0)/(ln B)^2 not decreasing at X = " + num(X));
      prev = ratio;
      ratios += (ratios.empty() ? "" : ", ") + num(ratio);
    }
    o.detail = "(B - p0)/(ln B)^2 = " + ratios + o.detail;
  });

  criterion(11, "sweep determinism", 60.0, [](Outcome& o) {
    const fs::path a = fs::temp_directory_path() / "magpol_acceptance_a.csv";
    const fs::path b = fs::temp_directory_path() / "magpol_acceptance_b.csv";
    cli::RunConfig c;
    c.command = "sweep";
    c.B_list = {std::exp(10.0), std::exp(12.0), std::exp(14.0)};
    std::ostringstream sink;
    c.out = a.string();
    o.require(cli::run(c, sink, sink) == 0, "first sweep failed");
    c.out = b.string();
    o.require(cli::run(c, sink, sink) == 0, "second sweep failed");
    auto slurp = [](const fs::path& p) {
      std::ifstream f(p, std::ios::binary);
      std::stringstream ss;
      ss << f.rdbuf();
      return ss.str();
    };
    const auto ta = slurp(a), tb = slurp(b);
    o.require(!ta.empty() && ta == tb, "CSV outputs differ");
    if (o.pass) o.detail = std::to_string(ta.size()) + " identical bytes";
    fs::remove(a);
    fs::remove(b);
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
