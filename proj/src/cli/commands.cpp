#include "magpol/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>

#include "magpol/certificate.hpp"
#include "magpol/cli/io.hpp"
#include "magpol/coulomb.hpp"
#include "magpol/effective_1d.hpp"
#include "magpol/errors.hpp"
#include "magpol/pekar.hpp"
#include "magpol/verify.hpp"

namespace magpol::cli {
namespace {

std::string fmt(double x) { return format_double(x); }

double default_K(double B) { return B * std::pow(std::log(B), -4.0 / 3.0); }

Grid1D grid_for(const RunConfig& c, const PhysParams& p) {
  if (c.T) return Grid1D(c.n, *c.T);
  return GridPolicy{c.n, 60.0}.grid_for(p);
}

void print_breakdown(std::ostream& out, const std::string& prefix, const EnergyBreakdown& e) {
  out << prefix << "transverse = " << fmt(e.transverse) << "\n"
      << prefix << "longitudinal_kinetic = " << fmt(e.longitudinal_kinetic) << "\n"
      << prefix << "coulomb = " << fmt(e.coulomb) << "\n"
      << prefix << "total = " << fmt(e.total) << "\n"
      << prefix << "binding = " << fmt(e.binding()) << "\n"
      << prefix << "dual_gap = " << fmt(e.dual_gap) << "\n";
}

}  // namespace

int cmd_oned(const RunConfig& c, std::ostream& out) {
  const OneDProblem p{c.a, c.b};
  const double exact = closed_form_energy(p);
  const auto s = solve_numeric(p, Grid1D(c.n, c.T.value_or(40.0)), c.tol);
  out << "closed_form_energy = " << fmt(exact + 0.0) << "\n"
      << "numeric_energy = " << fmt(s.energy) << "\n";
  if (s.zero_coupling) {
    out << "degenerate = true (b = 0: infimum 0 is not attained)\n";
    return kSuccess;
  }
  const double dist = distance_to_orbit(s.minimizer, p);
  const double rel = std::abs(s.energy - exact) / std::abs(exact);
  out << "relative_difference = " << fmt(rel) << "\n"
      << "distance_to_orbit = " << fmt(dist) << "\n"
      << "iterations = " << s.iterations << "\n";
  return rel <= c.agree_tol ? kSuccess : kInvariant;
}

int cmd_minimize(const RunConfig& c, std::ostream& out) {
  const PhysParams p{c.B, c.alpha};
  const auto r = pekar_minimize(p, grid_for(c, p), c.tol);
  out << "B = " << fmt(p.B) << "\nalpha = " << fmt(p.alpha) << "\n";
  print_breakdown(out, "", r.energy);
  if (p.B > std::numbers::e) out << "trial_total = " << fmt(trial_energy(p).total) << "\n";
  out << "iterations = " << r.solution.iterations << "\n"
      << "residual = " << fmt(r.solution.gradient_residual) << "\n";
  if (r.solution.zero_coupling) out << "degenerate = true (alpha = 0)\n";
  return kSuccess;
}

int cmd_trial(const RunConfig& c, std::ostream& out) {
  const PhysParams p{c.B, c.alpha};
  out << "B = " << fmt(p.B) << "\nalpha = " << fmt(p.alpha) << "\n";
  print_breakdown(out, "", trial_energy(p));
  return kSuccess;
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
  const GridPolicy policy{c.n, c.T.value_or(60.0)};
  const auto points = sweep(c.B_list, c.alpha, c.tol, policy, c.workers);
  std::vector<SweepRecord> rows;
  for (const auto& pt : points) {
    SweepRecord r;
    r.B = pt.params.B;
    r.alpha = pt.params.alpha;
    r.E_total = pt.minimum.total;
    r.E_kin3 = pt.minimum.longitudinal_kinetic;
    r.E_coulomb = pt.minimum.coulomb;
    r.trial_E = pt.trial.total;
    if (r.B >= 1e3) {
      const auto cert = certify_p0(r.B, r.alpha, default_K(r.B));
      if (cert.valid()) r.certificate_bound = cert.p0_bound;
    }
    r.iterations = pt.iterations;
    r.residual = pt.residual;
    rows.push_back(r);
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) throw ConfigError("cannot open " + c.out);
  write_sweep_csv(file, rows);
  out << "wrote " << rows.size() << " rows to " << c.out << "\n";
  return kSuccess;
}

int cmd_fit(const RunConfig& c, std::ostream& out) {
  std::ifstream file(c.in);
  if (!file) throw ConfigError("cannot open " + c.in);
  const auto rows = read_sweep_csv(file);
  std::vector<double> Bs, E;
  for (const auto& r : rows) {
    Bs.push_back(r.B);
    E.push_back(r.E_kin3 + r.E_coulomb);
  }
  const auto fit = fit_asymptotics(Bs, E);
  out << "c2 = " << fmt(fit.c2) << "\nc3 = " << fmt(fit.c3) << "\nc4 = " << fmt(fit.c4)
      << "\nresidual_rms = " << fmt(fit.residual_rms) << "\npoints = " << Bs.size() << "\n";
  return kSuccess;
}

int cmd_decompose(const RunConfig& c, std::ostream& out) {
  const PhysParams p{c.B, c.alpha};
  const Field1D f = p.alpha > 0.0 ? pekar_minimize(p, grid_for(c, p), c.tol).solution.minimizer : trial_state(p).f;
  const auto l = decompose(f, p.B);
  out << "D_total = " << fmt(l.D_total) << "\n"
      << "main_coefficient = " << fmt(l.main_coefficient) << "\n"
      << "main_term = " << fmt(l.main_term) << "\n"
      << "R1 = " << fmt(l.R1) << "\n"
      << "R1_bound = " << fmt(l.R1_bound) << "\n"
      << "R2 = " << fmt(l.R2) << "\n"
      << "quadrature_error_estimate = " << fmt(l.quadrature_error_estimate) << "\n"
      << "closes = " << (l.closes() ? "true" : "false") << "\n"
      << "r1_within_bound = " << (l.r1_within_bound() ? "true" : "false") << "\n";
  return l.closes() && l.r1_within_bound() ? kSuccess : kInvariant;
}

int cmd_certify(const RunConfig& c, std::ostream& out) {
  const double K = c.K.value_or(default_K(c.B));
  std::optional<CutoffParams> params;
  if (c.K3 || c.Kperp || c.gamma || c.L || c.M) {
    CutoffParams q = default_params(c.B, c.alpha, K);
    if (c.K3) q.K3 = *c.K3;
    if (c.Kperp) q.Kperp = *c.Kperp;
    if (c.gamma) q.gamma = *c.gamma;
    if (c.L) q.L = *c.L;
    if (c.M) q.M = *c.M;
    params = q;
  }
  auto cert = certify_p0(c.B, c.alpha, K, params);
  if (c.C_M && cert.valid()) attach_conditional_bound(cert, *c.C_M);
  const std::string text = certificate_json(cert).dump(2) + "\n";
  if (c.out.empty()) {
    out << text;
  } else {
    std::ofstream file(c.out, std::ios::binary);
    if (!file) throw ConfigError("cannot open " + c.out);
    file << text;
    out << "wrote certificate to " << c.out << "\n";
  }
  return cert.valid() ? kSuccess : kInvariant;
}

int cmd_verify(const RunConfig&, std::ostream& out) {
  const auto report = verify::run_suite();
  for (const auto& r : report.results) {
    out << (r.pass ? "PASS " : "FAIL ") << r.name << "  value = " << fmt(r.value) << "  threshold = " << fmt(r.threshold);
    if (!r.detail.empty()) out << "  (" << r.detail << ")";
    out << "\n";
  }
  return report.all_pass() ? kSuccess : kInvariant;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    c.validate();
    if (c.command == "oned") return cmd_oned(c, out);
    if (c.command == "minimize") return cmd_minimize(c, out);
    if (c.command == "trial") return cmd_trial(c, out);
    if (c.command == "sweep") return cmd_sweep(c, out);
    if (c.command == "fit") return cmd_fit(c, out);
    if (c.command == "decompose") return cmd_decompose(c, out);
    if (c.command == "certify") return cmd_certify(c, out);
    if (c.command == "verify") return cmd_verify(c, out);
    err << "error: unknown command '" << c.command << "'\n";
    return kValidation;
  } catch (const ConvergenceFailure& e) {
    err << "error: " << e.what() << " (residual " << fmt(e.residual()) << " after " << e.iterations()
        << " iterations)\n";
    return kConvergence;
  } catch (const QuadratureError& e) {
    err << "error: " << e.what() << "\n";
    return kConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }
}

}  // namespace magpol::cli
