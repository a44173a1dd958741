#include <iostream>

#include <CLI11.hpp>

#include "app/runner.hpp"

int main(int argc, char** argv) {
  using namespace varexp::app;
  CLI::App cli{"Variable-exponent norms, convolution inequalities and fractional Navier-Stokes mild solutions"};
  cli.require_subcommand(1);
  CliOptions opts;
  std::uint64_t seed = 0;

  struct Sub {
    Command cmd;
    const char* help;
  };
  const Sub subs[] = {
      {Command::norm, "Luxemburg norms of the corpus and ||1||_{L^s}"},
      {Command::verify, "Run inequality verification checks"},
      {Command::semigroup, "Run fractional heat smoothing checks"},
      {Command::solve, "Picard solve of the mild fractional Navier-Stokes problem"},
      {Command::report, "Summarise reports in an output directory"},
  };
  for (const auto& s : subs) {
    CLI::App* sub = cli.add_subcommand(to_string(s.cmd), s.help);
    auto* cfg = sub->add_option("--config", opts.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    if (s.cmd != Command::report) cfg->required();
    sub->add_flag("--strict", opts.strict, "Hypothesis violations exit with status 3");
    sub->add_option("--seed", seed, "Override the corpus/problem seed")->each([&](const std::string&) {
      opts.seed = seed;
    });
    sub->add_option("--out", opts.out_dir, "Output directory (overrides output.directory)");
    sub->callback([&opts, cmd = s.cmd] { opts.command = cmd; });
  }
  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }
  if (opts.seed) opts.seed = seed;
  return run(opts, std::cout);
}
