#include "magpol/cli/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace magpol::cli {
namespace {

nlohmann::ordered_json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::runtime_error("malformed number '" + s + "'");
  return v;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& rows) {
  os << kSweepHeader << "\n";
  for (const auto& r : rows) {
    os << format_double(r.B) << ',' << format_double(r.alpha) << ',' << format_double(r.E_total) << ','
       << format_double(r.E_kin3) << ',' << format_double(r.E_coulomb) << ',' << format_double(r.trial_E) << ','
       << (r.certificate_bound ? format_double(*r.certificate_bound) : "") << ',' << r.iterations << ','
       << format_double(r.residual) << "\n";
  }
}

std::vector<SweepRecord> read_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kSweepHeader) throw std::runtime_error("unexpected CSV header");
  std::vector<SweepRecord> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 9) throw std::runtime_error("CSV row with " + std::to_string(f.size()) + " fields");
    try {
      SweepRecord r;
      r.B = to_double(f[0]);
      r.alpha = to_double(f[1]);
      r.E_total = to_double(f[2]);
      r.E_kin3 = to_double(f[3]);
      r.E_coulomb = to_double(f[4]);
      r.trial_E = to_double(f[5]);
      if (!f[6].empty()) r.certificate_bound = to_double(f[6]);
      r.iterations = std::stol(f[7]);
      r.residual = to_double(f[8]);
      rows.push_back(r);
    } catch (const std::invalid_argument&) {
      throw std::runtime_error("malformed CSV row: " + line);
    }
  }
  return rows;
}

nlohmann::ordered_json certificate_json(const LowerBoundCertificate& cert) {
  using json = nlohmann::ordered_json;
  const auto& c = cert.cutoffs;
  const auto& l = cert.ledger;
  const auto& v = cert.validity;
  json j;
  j["B"] = cert.params.B;
  j["alpha"] = cert.params.alpha;
  j["cutoffs"] = {{"K", number(c.K)},         {"K3", number(c.K3)}, {"Kperp", number(c.Kperp)},
                  {"gamma", number(c.gamma)}, {"L", number(c.L)},   {"M", c.M},
                  {"block_width", number(c.block_width())},         {"k_b", "midpoint"}};
  j["ledger"] = {{"kappa", number(l.kappa)},
                 {"kappa1", number(l.kappa1)},
                 {"kappa2", number(l.kappa2)},
                 {"R", number(l.R)},
                 {"localization_error", number(l.localization_error)},
                 {"block_error", number(l.block_error)},
                 {"mode_count_error", number(l.mode_count_error)},
                 {"projection_constant", number(l.projection_constant)},
                 {"firstcut_constant", number(l.firstcut_constant)}};
  j["I_value"] = number(cert.I_value);
  j["p0_bound"] = number(cert.p0_bound);
  if (cert.conditional_full_bound) {
    j["conditional_full_bound"] = number(*cert.conditional_full_bound);
    j["assumed_C_M"] = number(*cert.assumed_C_M);
    j["conditional_note"] = "conditional on the assumed constant C_M of the full-operator reduction";
  } else {
    j["conditional_full_bound"] = nullptr;
  }
  j["validity"] = {{"valid", cert.valid()},
                   {"kappa_positive", v.kappa_positive},
                   {"kappa1_positive", v.kappa1_positive},
                   {"gamma_in_range", v.gamma_in_range},
                   {"blocks_nonempty", v.blocks_nonempty},
                   {"cutoff_ordering", v.cutoff_ordering},
                   {"K_at_least_sqrtB", v.K_at_least_sqrtB}};
  j["advisory"] = {{"gamma_at_most_half", cert.advisory.gamma_at_most_half},
                   {"kappa_window", cert.advisory.kappa_window},
                   {"guard_constant", cert.advisory.guard_constant}};
  j["assumptions"] = cert.assumptions;
  return j;
}

}  // namespace magpol::cli
