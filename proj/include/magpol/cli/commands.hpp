#pragma once

#include <iosfwd>

#include "magpol/cli/config.hpp"

namespace magpol::cli {

enum ExitCode : int { kSuccess = 0, kValidation = 1, kConvergence = 2, kInvariant = 3 };

int cmd_oned(const RunConfig& c, std::ostream& out);
int cmd_minimize(const RunConfig& c, std::ostream& out);
int cmd_trial(const RunConfig& c, std::ostream& out);
int cmd_sweep(const RunConfig& c, std::ostream& out);
int cmd_fit(const RunConfig& c, std::ostream& out);
int cmd_decompose(const RunConfig& c, std::ostream& out);
int cmd_certify(const RunConfig& c, std::ostream& out);
int cmd_verify(const RunConfig& c, std::ostream& out);

/// Validates and dispatches on c.command, mapping library errors to exit codes.
int run(const RunConfig& c, std::ostream& out, std::ostream& err);

}  // namespace magpol::cli
