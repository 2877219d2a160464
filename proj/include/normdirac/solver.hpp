#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "normdirac/reduction.hpp"

namespace normdirac {

struct SolverOptions {
  double tol_grad = 1e-8;
  /// Nonpositive means 1e-9 * a.
  double tol_inner = 0.0;
  int max_outer = 4000;
  double step_init = 1.0;
  double armijo_c = 1e-4;
  int max_backtracks = 30;
  double a_max = 4.0;
  double deflation_strength = 1e-2;
  std::uint64_t seed = 1;

  void validate() const;
  InnerOptions inner(double a) const { return {tol_inner > 0.0 ? tol_inner : 1e-9 * a, 500}; }
  /// Relative PDE residual accepted as a solution.
  double residual_tol() const { return 100.0 * tol_grad; }
};

enum class SolveStatus { converged, max_iterations, stalled, left_x_a, inner_failed };
std::string to_string(SolveStatus s);

struct SolutionRecord {
  double a = 0.0;
  double omega = 0.0;
  SpinorField u;
  /// Minimizer on the sphere (plus-field).
  Spectrum v_star;
  double j_level = 0.0;
  /// J - m a^2 / 2.
  double j_shift = 0.0;
  double residual_l2 = 0.0;
  double residual_rel = 0.0;
  double u_l2 = 0.0;
  double u_hhalf = 0.0;
  double u_e = 0.0;
  double v_e2_ratio = 0.0;  // ||v*||_E^2 / a^2
  bool in_x_a = false;
  int iterations = 0;
  double grad_norm = 0.0;
  std::string model_tag;
  SolveStatus status = SolveStatus::max_iterations;
  /// All convergence conditions met jointly.
  bool converged = false;
  /// (m - omega) / a^(p-2).
  double gap_constant = 0.0;
  std::vector<double> j_trace;  // J - m a^2 / 2 along accepted iterates

  explicit SolutionRecord(const Grid& g) : u(g), v_star(g) {}
};

/// Repulsion from previously found solutions: strength * a^2 * sum 1 / d_i^2
/// with d_i^2 = int (|v|^2 - |v_i|^2)^2 / int |v_i|^4. The density distance is
/// blind to the phase and Kramers symmetries, so whole symmetry orbits are
/// repelled at once.
class Deflation {
public:
  Deflation(const DiracOperator& op, double strength) : op_(op), strength_(strength) {}

  void add(const Spectrum& v);
  bool empty() const { return densities_.empty(); }
  std::size_t size() const { return densities_.size(); }

  struct Value {
    double penalty;
    Spectrum gradient;  // E-Riesz representative in E+, not yet tangent-projected
  };
  Value evaluate(const Spectrum& v) const;

private:
  DiracOperator op_;
  double strength_;
  std::vector<std::vector<double>> densities_;
  std::vector<double> norms_;
};

/// Riemannian descent of J on {v in E+ : ||v||_{L^2} = a}.
SolutionRecord minimize_on_sphere(const Reduction& red, double a, const Spectrum& v0,
                                  const SolverOptions& opts, const Deflation* deflation = nullptr);

/// Builds the record for a sphere point: u = G(v), omega = kappa(u) and checks.
SolutionRecord extract_solution(const Reduction& red, const ReducedState& state, const SolverOptions& opts);

/// Default start: a Gaussian of width 3 times the spinor (1,0,0,0) at `center`.
Spectrum default_start(const DiracOperator& op, double a, const Vec3& center);

struct SweepResult {
  std::vector<SolutionRecord> rows;
  double slope = 0.0;  // d log(m - omega) / d log a
  double gap_constant = 0.0;  // least-squares C in m - omega = C a^(p-2)
  bool fit_valid = false;
  bool gap_decreasing = false;
  bool hhalf_decreasing = false;
  std::vector<std::string> warnings;
};

SweepResult bifurcation_sweep(const Reduction& red, const std::vector<double>& a_values,
                              const SolverOptions& opts, const Vec3& center);

struct MultiStartResult {
  std::vector<SolutionRecord> records;
  /// distinct[i][j]: records i and j are distinguishable solutions.
  std::vector<std::vector<bool>> distinct;
  int requested = 0;
  int starts = 0;
  std::vector<std::string> diagnostics;
};

/// Density L^1 distance divided by a^2, or a multiplier gap, separates two records.
bool records_distinct(const SolutionRecord& x, const SolutionRecord& y);

MultiStartResult multi_start_deflated(const Reduction& red, double a, int k, const SolverOptions& opts,
                                      int random_starts = 2);

}  // namespace normdirac
