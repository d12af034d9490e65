#include "magpol/cli/config.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"

namespace magpol::cli {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

double parse_number(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw ConfigError("not a number: '" + text + "'");
  return v;
}

}  // namespace

double parse_B(const std::string& text) {
  if (!text.empty() && (text[0] == 'e' || text[0] == 'E')) return std::exp(parse_number(text.substr(1)));
  return parse_number(text);
}

std::vector<double> parse_B_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw ConfigError("empty entry in B list");
    out.push_back(parse_B(item));
  }
  return out;
}

void RunConfig::validate() const {
  require(tol > 0.0 && std::isfinite(tol), "tol must be positive");
  require(n >= 16 && n % 2 == 0, "n must be even and at least 16");
  require(!T || (*T > 0.0 && std::isfinite(*T)), "T must be positive");
  const double e = std::numbers::e;
  if (command == "oned") {
    require(a > 0.0 && std::isfinite(a), "a must be positive");
    require(b >= 0.0 && std::isfinite(b), "b must be nonnegative");
    require(agree_tol > 0.0, "agree-tol must be positive");
    return;
  }
  if (command == "fit") {
    require(!in.empty(), "fit needs --in");
    return;
  }
  if (command == "verify") return;
  require(alpha >= 0.0 && std::isfinite(alpha), "alpha must be nonnegative");
  if (command == "sweep") {
    require(!B_list.empty(), "sweep needs a B list");
    for (double x : B_list) require(x > e && std::isfinite(x), "sweep values of B must exceed e");
    require(!out.empty(), "sweep needs --out");
    return;
  }
  require(B > 1.0 && std::isfinite(B), "B must exceed 1");
  if (command == "trial" || command == "decompose") require(B > e, "B must exceed e");
  if (command == "certify") {
    require(B >= 1e3, "certify needs B >= 1e3");
    require(!K || *K > 0.0, "K must be positive");
    require(!M || *M >= 1, "M must be at least 1");
    require(!C_M || *C_M >= 0.0, "C_M must be nonnegative");
  }
}

std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, int& exit_code) {
  RunConfig c;
  std::vector<std::string> B_text;
  CLI::App app{"Magnetic polaron energies: 1D reductions, Pekar minimization and lower-bound certificates"};
  app.set_config("--config", "", "Plain-text key = value file; command-line flags take precedence");
  app.fallthrough();
  app.require_subcommand(1, 1);

  app.add_option("--a", c.a, "Mass a of the 1D problem");
  app.add_option("--b", c.b, "Coupling b of the 1D problem");
  app.add_option("--agree-tol", c.agree_tol, "Relative agreement required by oned");
  app.add_option("--B", B_text, "Field strength; eN means e^N. For sweep, a comma-separated list")->delimiter(',');
  app.add_option("--alpha", c.alpha, "Coupling constant");
  app.add_option("--n", c.n, "Grid points");
  app.add_option("--T", c.T, "Grid half-width");
  app.add_option("--tol", c.tol, "Solver tolerance");
  app.add_option("--K", c.K, "Overall cutoff (default B (ln B)^{-4/3})");
  app.add_option("--K3", c.K3, "Longitudinal cutoff");
  app.add_option("--Kperp", c.Kperp, "Transverse cutoff");
  app.add_option("--gamma", c.gamma, "Kinetic split parameter in (0,1)");
  app.add_option("--L", c.L, "Localization length");
  app.add_option("--M", c.M, "Number of blocks");
  app.add_option("--C_M", c.C_M, "Assumed constant for the conditional full bound");
  app.add_option("--out", c.out, "Output file");
  app.add_option("--in", c.in, "Input file");
  app.add_option("--workers", c.workers, "Worker threads for sweep")->envname("MAGPOL_WORKERS");

  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"oned", "Effective 1D problem: numeric vs closed form"},
           {"minimize", "Minimize the product-state energy"},
           {"trial", "Energy of the explicit trial state"},
           {"sweep", "Minimize over a list of B and write CSV"},
           {"fit", "Fit the asymptotic expansion to a sweep CSV"},
           {"decompose", "Split the Coulomb term of the minimizer"},
           {"certify", "Lower-bound certificate as JSON"},
           {"verify", "Run the invariant suite"}})
    app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    exit_code = app.exit(e) == 0 ? 0 : 1;
    return std::nullopt;
  }
  c.command = app.get_subcommands().front()->get_name();
  try {
    for (const auto& t : B_text) c.B_list.push_back(parse_B(t));
    if (c.command != "sweep") {
      if (c.B_list.size() > 1) throw ConfigError("only sweep takes a list of B values");
      if (!c.B_list.empty()) c.B = c.B_list.front();
      c.B_list.clear();
    }
    if (c.workers == 0) c.workers = 1;
    c.validate();
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    exit_code = 1;
    return std::nullopt;
  }
  exit_code = 0;
  return c;
}

}  // namespace magpol::cli
