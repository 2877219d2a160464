// Acceptance run at desk scale: grid 24^3, box 16, m = 1.
// Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

#include <fmt/core.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "normdirac/cli/commands.hpp"
#include "normdirac/solver.hpp"
#include "normdirac/subspaces.hpp"

using namespace normdirac;

namespace {

constexpr double kMass = 1.0;
const Grid kGrid(24, 16.0);

struct Outcome {
  bool passed = true;
  std::string detail;
};

int failures = 0;

void run(int id, const std::string& name, double time_limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit > 0.0 && secs > time_limit) {
    out.passed = false;
    out.detail += fmt::format("; runtime {:.1f} s exceeds {:.0f} s", secs, time_limit);
  }
  if (!out.passed) ++failures;
  fmt::print("{} {:>2} {}: {} [{:.1f} s]\n", out.passed ? "PASS" : "FAIL", id, name, out.detail, secs);
  std::fflush(stdout);
}

// Independent evaluations built from the grid and the model formulas only.

double own_lambda(const Grid& g, std::size_t mode, double m) {
  const Vec3 xi = g.wavevector(mode);
  return std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2] + m * m);
}

double own_e2(const Spectrum& c, double m) {
  double s = 0.0;
  for (std::size_t p = 0; p < c.points(); ++p) {
    double w = 0.0;
    for (int k = 0; k < 4; ++k) w += std::norm(c(p, k));
    s += own_lambda(c.grid(), p, m) * w;
  }
  return s;
}

double own_l2sq(const SpinorField& u) {
  double s = 0.0;
  for (const cplx& z : u.values()) s += std::norm(z);
  return s * u.grid().cell_volume();
}

double modulus(const SpinorField& u, std::size_t p) {
  double s = 0.0;
  for (int k = 0; k < 4; ++k) s += std::norm(u(p, k));
  return std::sqrt(s);
}

double own_psi(const NonlinearModel& model, const SpinorField& u) {
  if (model.is_null()) return 0.0;
  double s = 0.0;
  for (std::size_t p = 0; p < u.points(); ++p) s += F_value(model, u.grid().position(p), modulus(u, p));
  return s * u.grid().cell_volume();
}

SpinorField own_f_times_u(const NonlinearModel& model, const SpinorField& u) {
  SpinorField out(u.grid());
  if (model.is_null()) return out;
  for (std::size_t p = 0; p < u.points(); ++p) {
    const double f = f_value(model, u.grid().position(p), modulus(u, p));
    for (int k = 0; k < 4; ++k) out(p, k) = f * u(p, k);
  }
  return out;
}

// I(h(v, w)) with h = sqrt(a^2 - ||w||^2) v / a + w, a = ||v||.
double own_i_of_h(const NonlinearModel& model, const Spectrum& v, const Spectrum& w, double m) {
  const double a2 = l2_inner(v, v);
  const double s2 = a2 - l2_inner(w, w);
  Spectrum h = w;
  h.axpy(std::sqrt(s2 / a2), v);
  return 0.5 * (s2 / a2) * own_e2(v, m) - 0.5 * own_e2(w, m) - own_psi(model, inverse(h));
}

// ---------------------------------------------------------------------------

Outcome spectral_algebra() {
  const DiracSymbol sym(kMass);
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> pick(0, kGrid.points() - 1);
  const Matrix4c id = Matrix4c::Identity();
  double worst_proj = 0.0, worst_eig = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Vec3 xi = kGrid.wavevector(pick(rng));
    const double lam = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2] + kMass * kMass);
    const ProjectorPair pp = spectral_projectors(xi, sym);
    const Matrix4c h = dirac_symbol_at(xi, sym);
    for (const Matrix4c& err :
         {Matrix4c(pp.plus - pp.plus.adjoint()), Matrix4c(pp.minus - pp.minus.adjoint()),
          Matrix4c(pp.plus * pp.plus - pp.plus), Matrix4c(pp.minus * pp.minus - pp.minus),
          Matrix4c(pp.plus + pp.minus - id), Matrix4c((h - lam * (pp.plus - pp.minus)) / lam)})
      worst_proj = std::max(worst_proj, err.cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(h, Eigen::EigenvaluesOnly);
    const Eigen::Vector4d expect(-lam, -lam, lam, lam);
    worst_eig = std::max(worst_eig, (es.eigenvalues() - expect).cwiseAbs().maxCoeff() / lam);
  }
  return {worst_proj <= 1e-12 && worst_eig <= 1e-12,
          fmt::format("10000 frequencies, projector identities {:.2e}, eigenvalues {:.2e} (tol 1e-12)", worst_proj,
                      worst_eig)};
}

Outcome mass_norm_inequality() {
  const DiracOperator op(kGrid, kMass);
  Rng rng(102);
  int violations = 0;
  double tightest = INFINITY;
  for (int i = 0; i < 100; ++i) {
    const SpinorField u = random_field(kGrid, rng, i % 2 == 0 ? 0.0 : 1.5);
    const double l2 = own_l2sq(u);
    const double e2 = own_e2(forward(u), kMass);
    if (!(kMass * l2 <= e2)) ++violations;
    tightest = std::min(tightest, (e2 - kMass * l2) / e2);
    if (std::abs(e2 - op.e_norm(u) * op.e_norm(u)) > 1e-12 * e2) ++violations;
  }
  const SpinorField c = constant_field(kGrid, {cplx(0.3, 0.4), 1.0, cplx(0.0, -0.2), 0.5});
  const double l2 = own_l2sq(c);
  const double e2 = op.e_norm(c) * op.e_norm(c);
  const double eq_err = std::abs(e2 - kMass * l2) / l2;
  return {violations == 0 && eq_err <= 1e-12,
          fmt::format("100 fields, {} violations, tightest relative margin {:.3e}; zero mode |E - m L2| = {:.2e}",
                      violations, tightest, eq_err)};
}

Outcome growth_suite() {
  std::vector<std::string> bad;
  std::size_t checks = 0;
  double worst_margin = INFINITY;
  NonlinearModel two;
  two.kind = ModelKind::two_power;
  two.p = 2.2;
  two.q = 2.8;
  two.growth_alpha = 2.2;
  for (const NonlinearModel& m : {NonlinearModel{}, two}) {
    m.validate();
    const GrowthReport rep = check_growth(m, 25000, 103);
    for (const auto& c : rep.checks) {
      ++checks;
      if (c.name.rfind("(1.", 0) != 0 && c.name.rfind("(f5)", 0) != 0) continue;
      // Equality cases of the pure power land within an ulp of zero on either side.
      if (!(c.passed && c.worst_margin >= -1e-13 && c.samples >= 10000)) bad.push_back(m.tag() + " " + c.name);
      if (c.name != "(1.3) pure power equality") worst_margin = std::min(worst_margin, c.worst_margin);
    }
  }
  // (1.3) equality for pure_power, sampled here directly: F(x, s t) = s^p F(x, t).
  const NonlinearModel pure;
  std::mt19937_64 rng(104);
  std::uniform_real_distribution<double> ux(-8.0, 8.0), ul(std::log(1e-2), std::log(1e2));
  double worst_eq = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Vec3 x{ux(rng), ux(rng), ux(rng)};
    const double t = std::exp(ul(rng)), s = std::exp(ul(rng));
    const double lhs = F_value(pure, x, s * t), rhs = std::pow(s, pure.p) * F_value(pure, x, t);
    worst_eq = std::max(worst_eq, std::abs(lhs - rhs) / rhs);
  }
  std::string detail = fmt::format(
      "{} checks, each over at least 10000 samples, smallest margin {:.2e}; pure_power (1.3) equality {:.2e} (tol 1e-13)",
      checks, worst_margin, worst_eq);
  if (!bad.empty()) detail += "; negative margin: " + bad.front();
  return {bad.empty() && worst_eq <= 1e-13, detail};
}

Outcome concavity() {
  const DiracOperator op(kGrid, kMass);
  const NonlinearModel model;
  const Reduction red(op, model);
  const double a = 0.05;
  const double radius = std::sqrt(kMass) * a / 2.0;
  Rng rng(104);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double worst_ratio = -INFINITY, worst_gap = INFINITY;
  for (int i = 0; i < 20; ++i) {
    Spectrum v = random_plus(op, rng, 0.5, a);
    Spectrum w = random_minus(op, rng, 1.0, 1.0);
    w *= 0.8 * uni(rng) * radius / std::sqrt(own_e2(w, kMass));
    Spectrum z = random_minus(op, rng, 1.0, 1.0);
    const double zn2 = std::pow(1e-2 * radius, 2);
    z *= std::sqrt(zn2 / own_e2(z, kMass));
    Spectrum wp = w, wm = w;
    wp += z;
    wm -= z;
    const double second =
        own_i_of_h(model, v, wp, kMass) - 2.0 * own_i_of_h(model, v, w, kMass) + own_i_of_h(model, v, wm, kMass);
    worst_ratio = std::max(worst_ratio, second / zn2);
    const double base = own_i_of_h(model, v, Spectrum(kGrid), kMass);
    for (int d = 0; d < 4; ++d) {
      Spectrum b = random_minus(op, rng, 1.0, 1.0);
      b *= radius / std::sqrt(own_e2(b, kMass));
      worst_gap = std::min(worst_gap, base - own_i_of_h(model, v, b, kMass));
    }
  }
  const double ratio_bound = -0.25 + 1e-3;
  const double gap_bound = kMass * a * a / 16.0 - 1e-3 * a * a;
  return {worst_ratio <= ratio_bound && worst_gap >= gap_bound,
          fmt::format("a=0.05, largest second difference / ||z||^2 = {:.4f} (bound {:.4f}); smallest boundary gap "
                      "{:.4e} (bound {:.4e})",
                      worst_ratio, ratio_bound, worst_gap, gap_bound)};
}

Outcome inner_uniqueness() {
  const DiracOperator op(kGrid, kMass);
  const Reduction red(op, NonlinearModel{});
  const double a = 0.1;
  const InnerOptions inner{1e-9 * a, 500};
  const double radius = red.ball_radius(a);
  Rng rng(105);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    Spectrum v = random_plus(op, rng, 0.5, a);
    std::vector<Spectrum> maxima;
    for (int s = 0; s < 5; ++s) {
      Spectrum w0 = random_minus(op, rng, 1.0, 1.0);
      w0 *= 0.9 * uni(rng) * radius / std::sqrt(own_e2(w0, kMass));
      maxima.push_back(red.inner_maximize(v, inner, &w0).w);
    }
    for (std::size_t p = 0; p < maxima.size(); ++p)
      for (std::size_t q = p + 1; q < maxima.size(); ++q)
        worst = std::max(worst, std::sqrt(own_e2(maxima[p] - maxima[q], kMass)));
  }
  const double tol = 10.0 * inner.tol;
  return {worst <= tol, fmt::format("10 fields x 5 starts, largest E-distance {:.3e} (tol {:.1e})", worst, tol)};
}

Outcome gradient_identity() {
  const DiracOperator op(kGrid, kMass);
  const Reduction red(op, NonlinearModel{});
  const double a = 0.1;
  const InnerOptions inner{1e-9 * a, 500};
  Rng rng(106);
  double worst_fd = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Spectrum v = random_plus(op, rng, 0.5, a);
    Spectrum z = random_plus(op, rng, 0.5, a);
    z.axpy(-l2_inner(z, v) / (a * a), v);  // tangent to the sphere
    const ReducedState st = red.evaluate(v, inner);
    const double t = 1e-5;
    auto on_sphere = [&](double s) {
      Spectrum x = v;
      x.axpy(s, z);
      x *= a / l2_norm(x);
      return red.evaluate(x, inner, &st.w).j_shift;
    };
    const double fd = (on_sphere(t) - on_sphere(-t)) / (2 * t);
    const double an = op.e_inner(st.grad_tangent, z);
    worst_fd = std::max(worst_fd, std::abs(an - fd) / std::max(std::abs(fd), std::abs(an)));
  }

  // With Psi = 0 the reduced functional is 1/2 ||v||_E^2 and its sphere gradient
  // is v - mu v / lambda with mu = a^2 / sum |v|^2 / lambda.
  NonlinearModel null_model;
  null_model.kind = ModelKind::null;
  const Reduction red0(op, null_model);
  double worst_closed = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Spectrum v = random_plus(op, rng, 0.5, a);
    Spectrum v_over_lam = v;
    double weighted = 0.0;
    for (std::size_t p = 0; p < v.points(); ++p) {
      const double lam = own_lambda(kGrid, p, kMass);
      for (int k = 0; k < 4; ++k) {
        v_over_lam(p, k) /= lam;
        weighted += std::norm(v(p, k)) / lam;
      }
    }
    Spectrum expect = v;
    expect.axpy(-(a * a) / weighted, v_over_lam);
    const Spectrum got = red0.reduced_gradient(v, inner);
    worst_closed = std::max(worst_closed, std::sqrt(own_e2(got - expect, kMass) / own_e2(expect, kMass)));
  }
  return {worst_fd <= 1e-4 && worst_closed <= 1e-10,
          fmt::format("20 sphere-path differences, worst relative error {:.2e} (tol 1e-4); null closed form {:.2e} "
                      "(tol 1e-10)",
                      worst_fd, worst_closed)};
}

// The checks of criterion 7, recomputed from the record's field.
Outcome verify_solution(const SolutionRecord& r, const DiracOperator& op, const NonlinearModel& model, double a) {
  std::vector<std::string> bad;
  const double m = op.mass();
  const double l2 = std::sqrt(own_l2sq(r.u));
  if (!(std::abs(l2 - a) <= 1e-9 * a)) bad.push_back(fmt::format("|u|={:.12g}", l2));
  const SpinorField h0u = op.apply_h0(r.u);
  const SpinorField fu = own_f_times_u(model, r.u);
  SpinorField res = h0u - fu;
  res.axpy(-r.omega, r.u);
  const double rel = std::sqrt(own_l2sq(res) / own_l2sq(h0u));
  if (!(rel <= 1e-6)) bad.push_back(fmt::format("residual {:.2e}", rel));
  const double rayleigh = (l2_inner(h0u, r.u) - l2_inner(fu, r.u)) / own_l2sq(r.u);
  if (!(r.omega < m && rayleigh < m)) bad.push_back(fmt::format("omega {:.12g}", r.omega));
  const SpectralSplit s = op.split(r.u);
  const double energy = 0.5 * own_e2(s.plus, m) - 0.5 * own_e2(s.minus, m) - own_psi(model, r.u);
  const double half = 0.5 * m * a * a;
  if (!(energy < half && r.j_level < half)) bad.push_back(fmt::format("J {:.12g}", energy));
  if (std::abs(energy - r.j_level) > 1e-8 * half) bad.push_back(fmt::format("J mismatch {:.3e}", energy - r.j_level));
  if (!r.converged) bad.push_back("record not converged (" + to_string(r.status) + ")");
  std::string detail = fmt::format("|u|-a = {:.1e}, residual {:.2e}, omega = {:.9f}, J = {:.9f}, margin {:.3e}",
                                   l2 - a, rel, r.omega, energy, half - energy);
  if (!bad.empty()) detail += "; failed: " + bad.front();
  return {bad.empty(), detail};
}

Outcome existence() {
  const DiracOperator op(kGrid, kMass);
  const NonlinearModel model;
  const Reduction red(op, model);
  const double a = 0.1;
  const SolutionRecord r = minimize_on_sphere(red, a, default_start(op, a, {0.0, 0.0, 0.0}), SolverOptions{});
  return verify_solution(r, op, model, a);
}

Outcome bifurcation() {
  const DiracOperator op(kGrid, kMass);
  const NonlinearModel model;
  const Reduction red(op, model);
  const std::vector<double> as{0.2, 0.14, 0.1, 0.07, 0.05};
  const SweepResult s = bifurcation_sweep(red, as, SolverOptions{}, {0.0, 0.0, 0.0});
  std::vector<std::string> bad;
  if (s.rows.size() != as.size()) return {false, "missing rows"};
  std::vector<double> gap, hh;
  double worst_e = 0.0;
  for (const auto& r : s.rows) {
    if (!r.converged) bad.push_back(fmt::format("a={} not converged", r.a));
    gap.push_back(kMass - r.omega);
    hh.push_back(op.h_half_norm(r.u));
    worst_e = std::max(worst_e, op.e_norm(r.u) / (1.5 * r.a));
  }
  for (std::size_t i = 0; i < gap.size(); ++i) {
    if (!(gap[i] > 0.0)) bad.push_back("gap not positive");
    if (i > 0 && !(gap[i] < gap[i - 1])) bad.push_back("gap not decreasing");
    if (i > 0 && !(hh[i] < hh[i - 1])) bad.push_back("H^1/2 norm not decreasing");
  }
  // Least-squares slope of log(m - omega) against log a.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(as.size());
  for (std::size_t i = 0; i < as.size(); ++i) {
    const double x = std::log(as[i]), y = std::log(gap[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double p = model.p;
  if (!(slope >= p - 2 - 0.2 && slope <= p - 2 + 0.2)) bad.push_back("slope out of window");
  if (!(worst_e <= 1.0)) bad.push_back("E-norm above 1.5 a");
  std::string detail =
      fmt::format("m-omega from {:.4e} to {:.4e}, slope {:.4f} (window [{:.1f}, {:.1f}]), max ||u||_E/(1.5a) {:.4f}",
                  gap.front(), gap.back(), slope, p - 2.2, p - 1.8, worst_e);
  if (!bad.empty()) detail += "; failed: " + bad.front();
  return {bad.empty(), detail};
}

Outcome subspace_bounds() {
  const NonlinearModel model;
  SubspaceOptions o;
  o.a = 0.1;
  std::vector<std::string> bad;
  std::string levels;
  for (int k : {1, 2, 3}) {
    double prev = INFINITY;
    double best_level = INFINITY;
    int best_n = 0;
    for (int n : {2, 4, 8, 16}) {
      const SubspaceReport r = subspace_report(model, kMass, kGrid, k, n, o);
      if (!(r.inf_psi > 0.0)) bad.push_back(fmt::format("k={} n={}: inf Psi not positive", k, n));
      if (!(r.ratio < prev)) bad.push_back(fmt::format("k={} n={}: ratio not decreasing", k, n));
      if (n >= 4 && !r.injective) bad.push_back(fmt::format("k={} n={}: not injective", k, n));
      if (r.level_bound < best_level) {
        best_level = r.level_bound;
        best_n = n;
      }
      prev = r.ratio;
    }
    if (!(best_level < 0.005)) bad.push_back(fmt::format("k={}: no n with level bound below 0.005", k));
    levels += fmt::format("{}k={}: {:.6f} at n={}", levels.empty() ? "" : ", ", k, best_level, best_n);
  }
  std::string detail = "lowest level bounds " + levels;
  if (!bad.empty()) detail += "; failed: " + bad.front();
  return {bad.empty(), detail};
}

Outcome lk_estimates() {
  std::vector<std::string> bad;
  std::string detail;
  const HermiteBasis basis(3);
  const std::vector<std::vector<double>> zetas{{1.0, 0.0, 0.0}, {0.6, 0.0, 0.8}, {0.48, 0.6, 0.64}};
  for (const auto& zeta : zetas) {
    std::vector<double> excess, pairing, norm_sq;
    const std::vector<int> ladder{2, 4, 8, 16};
    for (int n : ladder) {
      const Grid g = scaled_grid(kGrid, n, 8.0);
      const DiracOperator op(g, kMass);
      const SpinorField u = l_k_map(g, n, basis, zeta);
      SpinorField e = op.apply_h0(u);
      e.axpy(-kMass, u);
      excess.push_back(std::sqrt(own_l2sq(e)) * n);
      norm_sq.push_back(own_l2sq(u));
      pairing.push_back(std::abs(l2_inner(e, u)) * n);
    }
    for (std::size_t i = 1; i < ladder.size(); ++i) {
      const double r = excess[i] / excess[i - 1];
      if (!(r >= 0.3 && r <= 1.7)) bad.push_back(fmt::format("excess ratio {:.3f} at n={}", r, ladder[i]));
      // A pairing at the roundoff floor carries no rate; it is bounded trivially.
      const double floor = 1e-12 * ladder[i] * norm_sq[i];
      if (pairing[i] > floor && pairing[i - 1] > floor) {
        const double rp = pairing[i] / pairing[i - 1];
        if (!(rp >= 0.3 && rp <= 1.7)) bad.push_back(fmt::format("pairing ratio {:.3f} at n={}", rp, ladder[i]));
      }
    }
    const double l2_16 = std::sqrt(norm_sq.back());
    if (!(std::abs(l2_16 - 1.0) <= 5e-3)) bad.push_back(fmt::format("||L_16 zeta|| = {:.6f}", l2_16));
    if (detail.empty())
      detail = fmt::format("n*||(H0-m)L_n zeta||: {:.4f} {:.4f} {:.4f} {:.4f}; max n*|pairing| {:.1e}; "
                           "||L_16 zeta|| = {:.6f}",
                           excess[0], excess[1], excess[2], excess[3],
                           *std::max_element(pairing.begin(), pairing.end()), l2_16);
  }
  detail = fmt::format("{} coefficient vectors; first: {}", zetas.size(), detail);
  if (!bad.empty()) detail += "; failed: " + bad.front();
  return {bad.empty(), detail};
}

Outcome multiplicity() {
  const DiracOperator op(kGrid, kMass);
  const NonlinearModel model;
  const Reduction red(op, model);
  const double a = 0.1;
  const MultiStartResult res = multi_start_deflated(red, a, 2, SolverOptions{}, 2);
  std::vector<std::string> bad;
  const std::size_t n = res.records.size();
  if (n < 1) bad.push_back("no verified solution");
  for (std::size_t i = 0; i < n; ++i) {
    const Outcome o = verify_solution(res.records[i], op, model, a);
    if (!o.passed) bad.push_back(fmt::format("record {}: {}", i, o.detail));
  }
  if (res.distinct.size() != n) bad.push_back("distinct matrix size");
  for (std::size_t i = 0; i < res.distinct.size(); ++i) {
    if (res.distinct[i].size() != n) {
      bad.push_back("distinct matrix not square");
      break;
    }
    if (res.distinct[i][i]) bad.push_back("record distinct from itself");
    for (std::size_t j = 0; j < n; ++j) {
      if (res.distinct[i][j] != res.distinct[j][i]) bad.push_back("distinct matrix not symmetric");
      if (i != j && !res.distinct[i][j]) bad.push_back("returned records not pairwise distinct");
      if (res.distinct[i][j] != (i != j && records_distinct(res.records[i], res.records[j])))
        bad.push_back("distinct matrix disagrees with records");
    }
  }
  std::string omegas;
  for (const auto& r : res.records) omegas += fmt::format(" {:.9f}", r.omega);
  std::string detail = fmt::format("requested 2, {} starts, {} verified record(s), omega:{}", res.starts, n, omegas);
  if (!bad.empty()) detail += "; failed: " + bad.front();
  return {bad.empty(), detail};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / fmt::format("normdirac_acceptance_{}", ::getpid());
  fs::remove_all(root);
  cli::RunContext ctx;
  ctx.quiet = true;
  std::vector<int> codes;
  for (const char* sub : {"run1", "run2"}) {
    ctx.output_dir = (root / sub).string();
    codes.push_back(cli::cmd_solve(ctx));
  }
  bool same = true;
  std::size_t bytes = 0;
  for (const char* f : {"solution.json", "solution.bin"}) {
    const std::string x = slurp(root / "run1" / f), y = slurp(root / "run2" / f);
    same = same && !x.empty() && x == y;
    bytes += x.size();
  }
  fs::remove_all(root);
  const bool ok = same && codes[0] == 0 && codes[1] == 0;
  return {ok, fmt::format("exit codes {} {}, {} bytes compared, {}", codes[0], codes[1], bytes,
                          same ? "identical" : "different")};
}

}  // namespace

int main() {
  run(1, "spectral algebra", 5.0, spectral_algebra);
  run(2, "(2.1) m||u||^2 <= ||u||_E^2", 0.0, mass_norm_inequality);
  run(3, "growth suite (1.2)-(1.5), (f5)", 0.0, growth_suite);
  run(4, "inner concavity and boundary gap", 120.0, concavity);
  run(5, "inner maximizer uniqueness", 0.0, inner_uniqueness);
  run(6, "(3.1) gradient identity", 0.0, gradient_identity);
  run(7, "existence at a = 0.1", 600.0, existence);
  run(8, "bifurcation sweep", 0.0, bifurcation);
  run(9, "subspace bounds", 0.0, subspace_bounds);
  run(10, "L_n estimates", 0.0, lk_estimates);
  run(11, "multiplicity k = 2", 0.0, multiplicity);
  run(12, "determinism", 0.0, determinism);
  fmt::print("{} of 12 criteria passed\n", 12 - failures);
  return failures == 0 ? 0 : 1;
}
