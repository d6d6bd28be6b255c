#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "fqb/io.hpp"

namespace fqb {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct CliOutcome {
  std::optional<RunConfig> config;  // set when a command should run
  int exit_code = kExitOk;
  std::string message;  // help text or one-line diagnostic
};

/// Parses `fqb <command> [flags]`. Flags override values from --config.
CliOutcome parse_cli(int argc, const char* const* argv);

/// Executes a parsed command. CSV goes to cfg.out when set, else to `out`;
/// validate prints one PASS/FAIL line per grid point to `out`.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace fqb
