#include <iostream>

#include "fqb/cli.hpp"

int main(int argc, char** argv) {
  const fqb::CliOutcome parsed = fqb::parse_cli(argc, argv);
  if (!parsed.config) {
    (parsed.exit_code == fqb::kExitOk ? std::cout : std::cerr) << parsed.message << '\n';
    return parsed.exit_code;
  }
  return fqb::run_command(*parsed.config, std::cout, std::cerr);
}
