#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "app/config.hpp"

namespace varexp::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitAssertionFailed = 1,
  kExitConfigError = 2,
  kExitHypothesis = 3,
  kExitNumericalAbort = 4,
};

struct CliOptions {
  Command command = Command::verify;
  std::string config_path;
  bool strict = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
};

// Runs one command end to end and returns the process exit code. Progress and
// diagnostics go to `log`.
int run(const CliOptions& options, std::ostream& log);

// FNV-1a 64-bit digest, hex encoded; used for the config hash in manifests.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace varexp::app
