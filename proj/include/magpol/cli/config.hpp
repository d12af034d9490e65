#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace magpol::cli {

struct RunConfig {
  std::string command;

  // oned
  double a = 1.0;
  double b = 1.0;
  /// Relative agreement required between numeric and closed-form energies.
  double agree_tol = 1e-6;

  double B = 0.0;
  double alpha = 1.0;
  std::vector<double> B_list;

  std::size_t n = 8192;
  /// Grid half-width; when absent the sweep policy 60 / max(1, alpha ln B / 4) is used.
  std::optional<double> T;
  double tol = 1e-10;

  // certify overrides
  std::optional<double> K;
  std::optional<double> K3;
  std::optional<double> Kperp;
  std::optional<double> gamma;
  std::optional<double> L;
  std::optional<long> M;
  std::optional<double> C_M;

  std::string out;
  std::string in;
  unsigned workers = 1;

  /// Throws ConfigError on out-of-range values for the selected command.
  void validate() const;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// "eN" means e^N; anything else is a decimal number.
double parse_B(const std::string& text);
/// Comma separated list of parse_B values.
std::vector<double> parse_B_list(const std::string& text);

/// Parses flags (and an optional --config key = value file; flags win).
/// Returns nullopt after printing help or a parse error; `exit_code` is set.
std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, int& exit_code);

}  // namespace magpol::cli
