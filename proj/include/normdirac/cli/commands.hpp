#pragma once

#include <string>

#include "normdirac/cli/check_suite.hpp"
#include "normdirac/cli/config.hpp"

namespace normdirac::cli {

/// Exit codes shared by every subcommand.
enum ExitCode { exit_ok = 0, exit_failure = 1, exit_config = 2 };

struct RunContext {
  RunConfig config;
  bool quiet = false;
  /// Replaces `config.output_dir` when nonempty.
  std::string output_dir;

  std::string out_path(const std::string& file) const;
  void log(const std::string& line) const;
};

/// Resolves solver.a_max = auto via estimate_a_max and returns the options
/// used by every solve.
SolverOptions resolved_solver_options(const RunContext& ctx, const Reduction& red);

CheckReport run_check_suite(const RunContext& ctx);

int cmd_check(const RunContext& ctx);
int cmd_solve(const RunContext& ctx);
int cmd_sweep(const RunContext& ctx);
int cmd_multi(const RunContext& ctx);
int cmd_subspace(const RunContext& ctx);

/// Dispatch by subcommand name; unknown names are a config error.
int run_command(const std::string& name, const RunContext& ctx);

}  // namespace normdirac::cli
