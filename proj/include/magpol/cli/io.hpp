#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "magpol/certificate.hpp"

namespace magpol::cli {

struct SweepRecord {
  double B = 0.0;
  double alpha = 0.0;
  double E_total = 0.0;
  double E_kin3 = 0.0;
  double E_coulomb = 0.0;
  double trial_E = 0.0;
  std::optional<double> certificate_bound;
  long iterations = 0;
  double residual = 0.0;
};

inline constexpr const char* kSweepHeader = "B,alpha,E_total,E_kin3,E_coulomb,trial_E,cert_bound,iters,residual";

/// 17 significant digits.
std::string format_double(double x);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& rows);
/// Throws std::runtime_error on a malformed file.
std::vector<SweepRecord> read_sweep_csv(std::istream& is);

nlohmann::ordered_json certificate_json(const LowerBoundCertificate& cert);

}  // namespace magpol::cli
