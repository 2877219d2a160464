#include <CLI11.hpp>

#include <iostream>

#include "normdirac/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace normdirac::cli;

  CLI::App app{"Normalized solutions of nonlinear Dirac equations on a periodic box"};
  app.require_subcommand(1);
  std::string config_path, output_dir;
  long long seed = -1;
  bool quiet = false;
  app.add_option("--config", config_path, "configuration file (key = value lines)")->required();
  app.add_option("--output", output_dir, "output directory, overrides output_dir");
  app.add_option("--seed", seed, "random seed, overrides solver.seed")->check(CLI::NonNegativeNumber);
  app.add_flag("--quiet", quiet, "suppress progress output");
  for (const char* name : {"check", "solve", "sweep", "multi", "subspace"}) app.add_subcommand(name)->fallthrough();
  app.get_subcommand("check")->description("run the invariant and inequality suites");
  app.get_subcommand("solve")->description("minimize on the L2 sphere at solver.a and extract (omega, u)");
  app.get_subcommand("sweep")->description("solve along sweep.a_values and fit m - omega against a");
  app.get_subcommand("multi")->description("deflated multi-start search at solver.a");
  app.get_subcommand("subspace")->description("subspace ratios and level bounds over subspace.k_list x n_ladder");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  try {
    RunContext ctx;
    ctx.config = load_config(config_path);
    if (seed >= 0) ctx.config.solver.seed = static_cast<std::uint64_t>(seed);
    ctx.output_dir = output_dir;
    ctx.quiet = quiet;
    return run_command(app.get_subcommands().front()->get_name(), ctx);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_failure;
  }
}
