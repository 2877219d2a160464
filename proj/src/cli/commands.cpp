#include "normdirac/cli/commands.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <filesystem>
#include <iostream>

#include "normdirac/cli/records.hpp"

namespace normdirac::cli {

namespace {

const Vec3 origin{0.0, 0.0, 0.0};

// Radius of the concavity probes run by `check`.
constexpr double probe_a = 0.05;

void prepare_output(const RunContext& ctx) {
  std::filesystem::create_directories(ctx.out_path(""));
  write_file(ctx.out_path("run.cfg"), render_config(ctx.config));
}

void write_error(const RunContext& ctx, const std::string& command, const std::string& message,
                 const SolutionRecord* rec) {
  JsonWriter w;
  w.begin_object().field("format_version", 1).field("command", command).field("error", message);
  if (rec) {
    w.begin_object("record");
    write_record_json(w, *rec, ctx.config.mass);
    w.end_object();
  }
  w.end_object();
  write_file(ctx.out_path("error.json"), w.str());
}

std::string record_summary(const SolutionRecord& r, double m) {
  return fmt::format("a={} omega={:.12f} m-omega={:.6e} J-ma²/2={:.6e} residual={:.3e} iterations={} status={}", r.a,
                     r.omega, m - r.omega, r.j_shift, r.residual_rel, r.iterations, to_string(r.status));
}

}  // namespace

std::string RunContext::out_path(const std::string& file) const {
  const std::filesystem::path dir = output_dir.empty() ? config.output_dir : output_dir;
  return file.empty() ? dir.string() : (dir / file).string();
}

void RunContext::log(const std::string& line) const {
  if (!quiet) std::cerr << line << '\n';
}

SolverOptions resolved_solver_options(const RunContext& ctx, const Reduction& red) {
  SolverOptions opts = ctx.config.solver;
  if (ctx.config.a_max_auto) {
    opts.a_max = estimate_a_max(red, origin);
    ctx.log(fmt::format("a_max (concavity certificate) = {:.6g}", opts.a_max));
  }
  return opts;
}

CheckReport run_check_suite(const RunContext& ctx) {
  const RunConfig& c = ctx.config;
  const Grid grid = c.grid();
  const DiracOperator op(grid, c.mass);
  const Reduction red(op, c.model);
  const std::uint64_t seed = c.solver.seed;
  CheckReport rep;
  rep.append(check_projector_algebra(grid, c.mass, static_cast<std::size_t>(c.check_samples), seed));
  rep.append(check_field_norms(op, 100, seed + 1));
  rep.append(check_growth_suite(c.model, grid, static_cast<std::size_t>(c.check_samples), seed + 2));
  rep.append(check_concavity(red, probe_a, 20, seed + 3));
  rep.append(check_gradient(red, c.a, 20, seed + 4));
  return rep;
}

int cmd_check(const RunContext& ctx) {
  prepare_output(ctx);
  const CheckReport rep = run_check_suite(ctx);
  JsonWriter w;
  w.begin_object().field("format_version", 1).field("passed", rep.all_passed()).begin_array("checks");
  for (const auto& c : rep.items) {
    w.begin_object()
        .field("suite", c.suite)
        .field("name", c.name)
        .field("margin", c.margin)
        .field("passed", c.passed)
        .field("detail", c.detail)
        .end_object();
    ctx.log(fmt::format("{} [{}] {}: {}", c.passed ? "PASS" : "FAIL", c.suite, c.name, c.detail));
  }
  w.end_array().end_object();
  write_file(ctx.out_path("check_report.json"), w.str());
  return rep.all_passed() ? exit_ok : exit_failure;
}

int cmd_solve(const RunContext& ctx) {
  const RunConfig& c = ctx.config;
  prepare_output(ctx);
  const DiracOperator op(c.grid(), c.mass);
  const Reduction red(op, c.model);
  try {
    const SolverOptions opts = resolved_solver_options(ctx, red);
    const SolutionRecord r = minimize_on_sphere(red, c.a, default_start(op, c.a, origin), opts);
    ctx.log(record_summary(r, c.mass));
    write_snapshot(ctx.out_path("solution.bin"), r.u, c.mass, r.a);
    write_file(ctx.out_path("solution.json"), solution_json(r, c.mass));
    if (!r.converged) {
      write_error(ctx, "solve", "solution did not meet the convergence conditions (" + to_string(r.status) + ")", &r);
      return exit_failure;
    }
    return exit_ok;
  } catch (const std::exception& e) {
    ctx.log(std::string("solve failed: ") + e.what());
    write_error(ctx, "solve", e.what(), nullptr);
    return exit_failure;
  }
}

int cmd_sweep(const RunContext& ctx) {
  const RunConfig& c = ctx.config;
  if (c.a_values.empty()) throw ConfigError("config", 0, "sweep.a_values", "sweep needs at least one radius");
  prepare_output(ctx);
  const DiracOperator op(c.grid(), c.mass);
  const Reduction red(op, c.model);
  try {
    const SolverOptions opts = resolved_solver_options(ctx, red);
    const SweepResult s = bifurcation_sweep(red, c.a_values, opts, origin);
    for (const auto& r : s.rows) ctx.log(record_summary(r, c.mass));
    for (const auto& warn : s.warnings) ctx.log("warning: " + warn);
    write_file(ctx.out_path("sweep.csv"), sweep_csv(s, c.mass));

    const double target = c.model.p - 2.0;
    JsonWriter w;
    w.begin_object()
        .field("format_version", 1)
        .field("model", c.model.tag())
        .field("slope", s.slope)
        .field("slope_expected", target)
        .field("gap_constant", s.gap_constant)
        .field("fit_valid", s.fit_valid)
        .field("gap_decreasing", s.gap_decreasing)
        .field("hhalf_decreasing", s.hhalf_decreasing)
        .begin_array("warnings");
    for (const auto& warn : s.warnings) w.value(warn);
    w.end_array().end_object();
    write_file(ctx.out_path("sweep_fit.json"), w.str());

    const bool any = std::any_of(s.rows.begin(), s.rows.end(), [](const SolutionRecord& r) { return r.converged; });
    if (s.fit_valid) ctx.log(fmt::format("slope d log(m-omega)/d log a = {:.4f} (p-2 = {})", s.slope, target));
    return any ? exit_ok : exit_failure;
  } catch (const std::invalid_argument& e) {
    throw ConfigError("config", 0, "sweep.a_values", e.what());
  }
}

int cmd_multi(const RunContext& ctx) {
  const RunConfig& c = ctx.config;
  prepare_output(ctx);
  const DiracOperator op(c.grid(), c.mass);
  const Reduction red(op, c.model);
  try {
    const SolverOptions opts = resolved_solver_options(ctx, red);
    const MultiStartResult res = multi_start_deflated(red, c.a, c.multi_k, opts, c.random_starts);
    for (const auto& d : res.diagnostics) ctx.log(d);

    JsonWriter w;
    w.begin_object()
        .field("format_version", 1)
        .field("a", c.a)
        .field("requested", res.requested)
        .field("found", res.records.size())
        .field("starts", res.starts)
        .begin_array("distinct");
    for (const auto& row : res.distinct) {
      w.begin_array();
      for (bool b : row) w.value(b);
      w.end_array();
    }
    w.end_array().begin_array("records");
    for (std::size_t i = 0; i < res.records.size(); ++i) {
      const auto& r = res.records[i];
      const std::string stem = fmt::format("multi_{}", i);
      write_file(ctx.out_path(stem + ".json"), solution_json(r, c.mass));
      write_snapshot(ctx.out_path(stem + ".bin"), r.u, c.mass, r.a);
      ctx.log(record_summary(r, c.mass));
      w.begin_object().field("file", stem + ".json");
      write_record_json(w, r, c.mass);
      w.end_object();
    }
    w.end_array().begin_array("diagnostics");
    for (const auto& d : res.diagnostics) w.value(d);
    w.end_array().end_object();
    write_file(ctx.out_path("multi.json"), w.str());
    if (static_cast<int>(res.records.size()) < c.multi_k)
      ctx.log(fmt::format("warning: {} of {} requested solutions found", res.records.size(), c.multi_k));
    return res.records.empty() ? exit_failure : exit_ok;
  } catch (const std::exception& e) {
    ctx.log(std::string("multi failed: ") + e.what());
    write_error(ctx, "multi", e.what(), nullptr);
    return exit_failure;
  }
}

int cmd_subspace(const RunContext& ctx) {
  const RunConfig& c = ctx.config;
  if (c.k_list.empty() || c.n_ladder.empty())
    throw ConfigError("config", 0, c.k_list.empty() ? "subspace.k_list" : "subspace.n_ladder", "list is empty");
  prepare_output(ctx);
  SubspaceOptions so;
  so.box_per_scale = c.box_per_scale;
  so.samples_per_dim = c.samples_per_dim;
  so.a = c.subspace_a;
  if (c.subspace_a) so.inner = c.solver.inner(*c.subspace_a);
  std::vector<SubspaceReport> rows;
  for (int k : c.k_list)
    for (int n : c.n_ladder) {
      rows.push_back(subspace_report(c.model, c.mass, c.grid(), k, n, so));
      const auto& r = rows.back();
      ctx.log(fmt::format("k={} n={} sup_quad={:.6e} inf_psi={:.6e} ratio={:.6e} injective={}{}", k, n, r.sup_quad,
                          r.inf_psi, r.ratio, r.injective,
                          r.a ? fmt::format(" level_bound={:.9e} below_half_ma2={}", r.level_bound, r.below_half_ma2)
                              : std::string()));
      if (r.leak_warning) ctx.log(fmt::format("warning: k={} n={} box captures {:.6f} of the mass", k, n, r.captured_mass));
    }
  write_file(ctx.out_path("subspace.csv"), subspace_csv(rows));
  return exit_ok;
}

int run_command(const std::string& name, const RunContext& ctx) {
  if (name == "check") return cmd_check(ctx);
  if (name == "solve") return cmd_solve(ctx);
  if (name == "sweep") return cmd_sweep(ctx);
  if (name == "multi") return cmd_multi(ctx);
  if (name == "subspace") return cmd_subspace(ctx);
  throw ConfigError("command line", 0, name, "unknown subcommand");
}

}  // namespace normdirac::cli
