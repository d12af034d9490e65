#include <iostream>

#include "magpol/cli/commands.hpp"
#include "magpol/cli/config.hpp"

int main(int argc, char** argv) {
  int code = 0;
  const auto config = magpol::cli::parse_command_line(argc, argv, code);
  if (!config) return code;
  return magpol::cli::run(*config, std::cout, std::cerr);
}
