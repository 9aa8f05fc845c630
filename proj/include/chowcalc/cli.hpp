#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace chowcalc::cli {

inline constexpr int kReportVersion = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitAssertion = 1,
  kExitParse = 2,
  kExitValidation = 3,
};

struct RunOptions {
  std::uint64_t seed = 0;
  bool parallel = false;
  bool check_only = false;
  std::optional<std::string> output;  // overrides the config's "output"
};

struct RunResult {
  int exit_code = kExitOk;
  std::string report;                  // empty on parse/validation failure
  std::string message;                 // diagnostics for stderr
  std::optional<std::string> output_path;
};

/// Validates and executes a config given as text. Performs no I/O.
RunResult run_text(const std::string& config_text, const RunOptions& options);

/// Reads the config file, runs it, writes the report to the output path (or
/// stdout when none is configured) and returns the exit code.
int run(const std::string& config_path, const RunOptions& options);

}  // namespace chowcalc::cli
