#include "normdirac/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "normdirac/detail/accumulate.hpp"

namespace normdirac {

void SolverOptions::validate() const {
  auto fail = [](const std::string& m) { throw std::invalid_argument("solver: " + m); };
  if (!(tol_grad > 0.0)) fail("tol_grad must be positive");
  if (!(tol_inner >= 0.0)) fail("tol_inner must be nonnegative (0 selects 1e-9 a)");
  if (max_outer <= 0) fail("max_outer must be positive");
  if (!(step_init > 0.0)) fail("step_init must be positive");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) fail("armijo_c must lie in (0,1)");
  if (max_backtracks <= 0) fail("max_backtracks must be positive");
  if (!(a_max > 0.0)) fail("a_max must be positive");
  if (!(deflation_strength >= 0.0)) fail("deflation_strength must be nonnegative");
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iterations: return "max_iterations";
    case SolveStatus::stalled: return "stalled";
    case SolveStatus::left_x_a: return "left_x_a";
    case SolveStatus::inner_failed: return "inner_failed";
  }
  return "unknown";
}

void Deflation::add(const Spectrum& v) {
  const SpinorField x = inverse(v);
  std::vector<double> rho(x.points());
  detail::Accumulator acc;
  for (std::size_t p = 0; p < rho.size(); ++p) {
    const Spinor s = x.spinor(p);
    rho[p] = std::norm(s[0]) + std::norm(s[1]) + std::norm(s[2]) + std::norm(s[3]);
    acc.add(rho[p] * rho[p]);
  }
  densities_.push_back(std::move(rho));
  norms_.push_back(acc.value());
}

Deflation::Value Deflation::evaluate(const Spectrum& v) const {
  Value out{0.0, Spectrum(op_.grid())};
  if (densities_.empty() || strength_ == 0.0) return out;
  const SpinorField x = inverse(v);
  const double a2 = l2_inner(v, v);
  const double dv = op_.grid().cell_volume();
  SpinorField grad(op_.grid());
  std::vector<double> rho(x.points());
  for (std::size_t p = 0; p < rho.size(); ++p) {
    const Spinor s = x.spinor(p);
    rho[p] = std::norm(s[0]) + std::norm(s[1]) + std::norm(s[2]) + std::norm(s[3]);
  }
  std::vector<double> coef(x.points(), 0.0);
  for (std::size_t i = 0; i < densities_.size(); ++i) {
    detail::Accumulator acc;
    for (std::size_t p = 0; p < rho.size(); ++p) {
      const double d = rho[p] - densities_[i][p];
      acc.add(d * d);
    }
    const double d2 = std::max(acc.value() / norms_[i], 1e-300);
    out.penalty += strength_ * a2 / d2;
    // d(1/d2) = -d(d2) / d2^2 and the L^2 gradient of d2 is 4 (|v|^2 - rho_i) v / (N_i dV).
    const double k = -strength_ * a2 / (d2 * d2) * 4.0 / (norms_[i] * dv);
    for (std::size_t p = 0; p < rho.size(); ++p) coef[p] += k * (rho[p] - densities_[i][p]);
    // The a^2 prefactor contributes 2 v / d2.
    for (std::size_t p = 0; p < rho.size(); ++p) coef[p] += 2.0 * strength_ / d2;
  }
  for (std::size_t p = 0; p < rho.size(); ++p)
    for (int c = 0; c < 4; ++c) grad(p, c) = coef[p] * x(p, c);
  out.gradient = op_.riesz(op_.project_plus(forward(grad)));
  return out;
}

Spectrum default_start(const DiracOperator& op, double a, const Vec3& center) {
  return gaussian_plus(op, center, 3.0, Spinor{1.0, 0.0, 0.0, 0.0}, a);
}

SolutionRecord extract_solution(const Reduction& red, const ReducedState& state, const SolverOptions& opts) {
  const DiracOperator& op = red.op();
  const double m = red.mass();
  const double a = state.a;
  SolutionRecord r(op.grid());
  r.a = a;
  r.u = state.g;
  r.v_star = state.v;
  r.omega = red.kappa(r.u);
  r.j_level = state.j_val;
  r.j_shift = state.j_shift;
  r.residual_l2 = l2_norm(red.pde_residual(r.u));
  r.residual_rel = red.relative_residual(r.u);
  r.u_l2 = l2_norm(r.u);
  const Spectrum uh = forward(r.u);
  r.u_hhalf = op.h_half_norm(uh);
  r.u_e = op.e_norm(uh);
  r.v_e2_ratio = op.e_inner(state.v, state.v) / (a * a);
  r.in_x_a = r.v_e2_ratio <= m + std::pow(a, 0.5 * (red.model().p - 2.0));
  r.grad_norm = state.grad_norm;
  r.model_tag = red.model().tag();
  if (!red.model().is_null()) r.gap_constant = (m - r.omega) / std::pow(a, red.model().p - 2.0);
  r.status = state.grad_norm <= opts.tol_grad * a ? SolveStatus::converged : SolveStatus::max_iterations;
  return r;
}

namespace {

bool joint_convergence(const Reduction& red, const SolutionRecord& r, const SolverOptions& opts) {
  const double m = red.mass();
  const bool base = r.status == SolveStatus::converged && r.residual_rel <= opts.residual_tol() && r.in_x_a &&
                    std::abs(r.u_l2 - r.a) <= 1e-9 * r.a;
  if (red.model().is_null()) return base;
  return base && r.omega < m && r.j_shift < 0.0;
}

}  // namespace

SolutionRecord minimize_on_sphere(const Reduction& red, double a, const Spectrum& v0, const SolverOptions& opts,
                                  const Deflation* deflation) {
  opts.validate();
  const DiracOperator& op = red.op();
  const double m = red.mass();
  if (!(a > 0.0)) throw std::invalid_argument("solver: a must be positive");
  if (a > opts.a_max) {
    std::ostringstream os;
    os << "solver: a = " << a << " exceeds a_max = " << opts.a_max;
    throw std::invalid_argument(os.str());
  }
  Spectrum v = op.project_plus(v0);
  const double n0 = l2_norm(v);
  if (!(std::abs(n0 - a) <= 1e-6 * a)) {
    std::ostringstream os;
    os << "solver: initial plus-field has L2 norm " << n0 << ", expected a = " << a;
    throw std::invalid_argument(os.str());
  }
  v *= a / n0;
  if (!red.in_v_set(v)) throw std::invalid_argument("solver: initial field is outside V");

  const InnerOptions inner = opts.inner(a);
  const double cap = m + std::pow(a, 0.5 * (red.model().p - 2.0));
  const bool use_defl = deflation && !deflation->empty();

  struct Point {
    ReducedState state;
    double objective;
    Spectrum grad;
    double grad_norm;
  };
  auto assess = [&](const Spectrum& x, const Spectrum* w_start) {
    ReducedState st = red.evaluate(x, inner, w_start);
    double obj = st.j_shift;
    Spectrum g = st.grad_tangent;
    if (use_defl) {
      Deflation::Value dv = deflation->evaluate(x);
      obj += dv.penalty;
      g += red.tangent_project(x, dv.gradient);
    }
    const double gn = op.e_norm(g);
    return Point{std::move(st), obj, std::move(g), gn};
  };

  Point cur = assess(v, nullptr);
  std::vector<double> trace{cur.state.j_shift};
  SolveStatus status = SolveStatus::max_iterations;
  bool below_half = cur.state.j_shift < 0.0;
  double t = opts.step_init;
  int it = 0;
  for (; it < opts.max_outer; ++it) {
    if (cur.grad_norm <= opts.tol_grad * a) {
      status = SolveStatus::converged;
      break;
    }
    bool accepted = false;
    std::optional<Point> next;
    for (int bt = 0; bt < opts.max_backtracks; ++bt) {
      Spectrum trial = cur.state.v;
      trial.axpy(-t, cur.grad);
      trial *= a / l2_norm(trial);
      try {
        if (!red.in_v_set(trial)) throw std::domain_error("trial left V");
        Point cand = assess(trial, &cur.state.w);
        if (cand.objective <= cur.objective - opts.armijo_c * t * cur.grad_norm * cur.grad_norm) {
          next.emplace(std::move(cand));
          accepted = true;
          break;
        }
      } catch (const InnerSolveError&) {
      } catch (const std::domain_error&) {
      }
      t *= 0.5;
    }
    if (!accepted) {
      status = SolveStatus::stalled;
      break;
    }
    // Barzilai-Borwein length in the E metric for the next trial step.
    Spectrum s = next->state.v - cur.state.v;
    Spectrum y = next->grad - cur.grad;
    const double sy = op.e_inner(s, y);
    const double ss = op.e_inner(s, s);
    t = sy > 0.0 ? std::clamp(ss / sy, 1e-6, 1e4) : std::min(2.0 * t, 1e4);
    cur = std::move(*next);
    trace.push_back(cur.state.j_shift);
    if (cur.state.j_shift < 0.0) below_half = true;
    if (below_half && op.e_inner(cur.state.v, cur.state.v) > cap * a * a) {
      status = SolveStatus::left_x_a;
      ++it;
      break;
    }
  }

  SolutionRecord rec = extract_solution(red, cur.state, opts);
  // Report the prescribed radius; u_l2 carries the realized one.
  rec.a = a;
  if (!red.model().is_null()) rec.gap_constant = (m - rec.omega) / std::pow(a, red.model().p - 2.0);
  rec.iterations = it;
  rec.status = status;
  rec.grad_norm = cur.grad_norm;
  rec.j_trace = std::move(trace);
  rec.converged = joint_convergence(red, rec, opts);
  return rec;
}

}  // namespace normdirac
