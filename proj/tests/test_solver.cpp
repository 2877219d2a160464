#include <doctest.h>

#include <cmath>

#include "normdirac/solver.hpp"

using namespace normdirac;

namespace {

const Grid grid(16, 12.0);
const Vec3 origin{0.0, 0.0, 0.0};

NonlinearModel null_model() {
  NonlinearModel m;
  m.kind = ModelKind::null;
  return m;
}

}  // namespace

TEST_CASE("solver options validation") {
  CHECK_NOTHROW(SolverOptions{}.validate());
  SolverOptions o;
  o.armijo_c = 1.0;
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);
  o = {};
  o.tol_grad = 0.0;
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);
  o = {};
  o.max_outer = 0;
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);
  o = {};
  o.deflation_strength = -1.0;
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);
  CHECK(SolverOptions{}.inner(0.1).tol == doctest::Approx(1e-10));
  CHECK(SolverOptions{}.residual_tol() == doctest::Approx(1e-6));
}

TEST_CASE("null model: the minimizer is the ground mode with omega = m") {
  const DiracOperator op(grid, 1.0);
  const Reduction red(op, null_model());
  const double a = 0.1;
  const SolutionRecord r = minimize_on_sphere(red, a, default_start(op, a, origin), SolverOptions{});
  CHECK(r.converged);
  CHECK(r.omega == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.j_level == doctest::Approx(0.5 * a * a).epsilon(1e-10));
  CHECK(std::abs(r.u_l2 - a) <= 1e-9 * a);
  CHECK(r.model_tag == "null");
}

TEST_CASE("pure power solve at a = 0.1") {
  const DiracOperator op(grid, 1.0);
  const Reduction red(op, NonlinearModel{});
  const double a = 0.1;
  const SolutionRecord r = minimize_on_sphere(red, a, default_start(op, a, origin), SolverOptions{});
  CHECK(r.status == SolveStatus::converged);
  CHECK(r.converged);
  CHECK(r.a == a);
  CHECK(std::abs(r.u_l2 - a) <= 1e-9 * a);
  CHECK(r.residual_rel <= 1e-6);
  CHECK(r.omega < 1.0);
  CHECK(r.j_shift < 0.0);
  CHECK(r.j_level < 0.5 * a * a);
  CHECK(r.in_x_a);
  CHECK(r.u_e <= 1.5 * a);
  // The multiplier stays below 2 J / a^2 < m.
  CHECK(r.omega <= 2.0 * r.j_level / (a * a) + 1e-9);
  REQUIRE_FALSE(r.j_trace.empty());
  for (std::size_t i = 1; i < r.j_trace.size(); ++i) CHECK(r.j_trace[i] <= r.j_trace[i - 1]);

  // Same inputs, same bits.
  const SolutionRecord again = minimize_on_sphere(red, a, default_start(op, a, origin), SolverOptions{});
  CHECK(again.u == r.u);
  CHECK(again.omega == r.omega);
  CHECK_FALSE(records_distinct(r, again));
}

TEST_CASE("solver input errors") {
  const DiracOperator op(grid, 1.0);
  const Reduction red(op, NonlinearModel{});
  SolverOptions o;
  o.a_max = 0.05;
  CHECK_THROWS_AS(minimize_on_sphere(red, 0.1, default_start(op, 0.1, origin), o), std::invalid_argument);
  CHECK_THROWS_AS(minimize_on_sphere(red, 0.1, default_start(op, 0.2, origin), SolverOptions{}),
                  std::invalid_argument);
  Rng rng(1);
  CHECK_THROWS_AS(minimize_on_sphere(red, 0.1, random_plus(op, rng, 0.0, 0.1), SolverOptions{}),
                  std::invalid_argument);
}

TEST_CASE("deflation penalty and gradient") {
  const DiracOperator op(grid, 1.0);
  Rng rng(2);
  const double a = 0.1;
  Deflation d(op, 1e-2);
  CHECK(d.empty());
  const Spectrum ref = random_plus(op, rng, 0.5, a);
  d.add(ref);
  CHECK(d.size() == 1);
  const Spectrum v = random_plus(op, rng, 0.5, a);
  const Deflation::Value val = d.evaluate(v);
  CHECK(val.penalty > 0.0);
  CHECK(std::isfinite(val.penalty));

  const Spectrum z = random_plus(op, rng, 0.5, a);
  const double h = 1e-6;
  const double fd = (d.evaluate(v + h * z).penalty - d.evaluate(v - h * z).penalty) / (2 * h);
  CHECK(op.e_inner(val.gradient, z) == doctest::Approx(fd).epsilon(1e-6));

  // The density distance cannot see a global phase.
  const double near = d.evaluate(cplx(0.0, 1.0) * ref + 1e-3 * v).penalty;
  CHECK(near > 1e3 * val.penalty);
}

TEST_CASE("record distinctness") {
  const DiracOperator op(grid, 1.0);
  const Reduction red(op, null_model());
  const SolutionRecord r1 = minimize_on_sphere(red, 0.1, default_start(op, 0.1, origin), SolverOptions{});
  SolutionRecord r2 = r1;
  CHECK_FALSE(records_distinct(r1, r2));
  r2.omega += 1e-3;
  CHECK(records_distinct(r1, r2));
  SolutionRecord r3 = r1;
  r3.u = cplx(0.0, 1.0) * r1.u;
  CHECK_FALSE(records_distinct(r1, r3));
}

TEST_CASE("multi-start: null model gives one solution with a symmetric matrix") {
  const DiracOperator op(grid, 1.0);
  const Reduction red(op, null_model());
  const MultiStartResult res = multi_start_deflated(red, 0.1, 2, SolverOptions{}, 1);
  REQUIRE(res.records.size() == 1);
  CHECK(res.records[0].omega == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(res.distinct.size() == 1);
  CHECK(res.requested == 2);
  CHECK(res.starts == 5);
  CHECK_FALSE(res.diagnostics.empty());
  CHECK_THROWS_AS(multi_start_deflated(red, 0.1, 0, SolverOptions{}), std::invalid_argument);
}

TEST_CASE("sweep argument validation") {
  const DiracOperator op(grid, 1.0);
  const Reduction red(op, null_model());
  CHECK_THROWS_AS(bifurcation_sweep(red, {}, SolverOptions{}, origin), std::invalid_argument);
  CHECK_THROWS_AS(bifurcation_sweep(red, {0.1, 0.2}, SolverOptions{}, origin), std::invalid_argument);
  CHECK_THROWS_AS(bifurcation_sweep(red, {0.1, -0.1}, SolverOptions{}, origin), std::invalid_argument);
}

TEST_CASE("null-model sweep has a vanishing gap") {
  const DiracOperator op(grid, 1.0);
  const Reduction red(op, null_model());
  const SweepResult s = bifurcation_sweep(red, {0.2, 0.1, 0.05}, SolverOptions{}, origin);
  REQUIRE(s.rows.size() == 3);
  for (const auto& r : s.rows) {
    CHECK(r.converged);
    CHECK(std::abs(1.0 - r.omega) < 1e-10);
  }
  CHECK_FALSE(s.fit_valid);
}

TEST_CASE("pure power sweep: gap shrinks like a^(p-2)") {
  const DiracOperator op(grid, 1.0);
  const Reduction red(op, NonlinearModel{});
  const SweepResult s = bifurcation_sweep(red, {0.2, 0.1, 0.05}, SolverOptions{}, origin);
  for (const auto& r : s.rows) CHECK(r.converged);
  CHECK(s.fit_valid);
  CHECK(s.gap_decreasing);
  CHECK(s.hhalf_decreasing);
  CHECK(s.slope == doctest::Approx(0.5).epsilon(0.4));
  CHECK(s.gap_constant > 0.0);
}
