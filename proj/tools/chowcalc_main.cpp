#include <CLI11.hpp>

#include <cstdint>
#include <string>

#include "chowcalc/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"chowcalc: exact family invariant calculus"};
  app.require_subcommand(1);

  std::string config;
  chowcalc::cli::RunOptions opts;
  std::string output;

  auto* run = app.add_subcommand("run", "validate and execute a config");
  run->add_option("config", config, "config file (JSON)")->required();
  run->add_option("--seed", opts.seed, "seed for the randomized checks");
  run->add_flag("--parallel", opts.parallel, "run tasks concurrently");
  run->add_flag("--check-only", opts.check_only, "validate without executing");
  run->add_option("--output", output, "report path, '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : chowcalc::cli::kExitParse;
  }
  if (!output.empty()) opts.output = output;
  return chowcalc::cli::run(config, opts);
}
