#include "normdirac/cli/check_suite.hpp"

#include <fmt/format.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace normdirac::cli {

bool CheckReport::all_passed() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& c) { return c.passed; });
}

void CheckReport::append(std::vector<CheckItem> more) {
  for (auto& c : more) items.push_back(std::move(c));
}

namespace {

CheckItem tolerance_item(const std::string& suite, const std::string& name, double tol, double err,
                         std::string detail = {}) {
  const bool ok = std::isfinite(err) && err <= tol;
  return {suite, name, tol - err, ok, detail.empty() ? fmt::format("error {:.3e} vs tolerance {:.1e}", err, tol) : detail};
}

double max_abs(const Matrix4c& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

std::vector<CheckItem> check_projector_algebra(const Grid& grid, double mass, std::size_t samples,
                                               std::uint64_t seed) {
  const DiracSymbol sym(mass);
  Rng rng(seed);
  std::uniform_int_distribution<int> pick(0, grid.n_per_axis() - 1);
  const Matrix4c id = Matrix4c::Identity();
  double herm = 0, idem = 0, sum = 0, cross = 0, symb = 0, eig = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Vec3 xi{grid.frequency(pick(rng)), grid.frequency(pick(rng)), grid.frequency(pick(rng))};
    const double lam = sym.lambda(xi);
    const ProjectorPair pp = spectral_projectors(xi, sym);
    const Matrix4c h = dirac_symbol_at(xi, sym);
    for (const Matrix4c* p : {&pp.plus, &pp.minus}) {
      herm = std::max(herm, max_abs(*p - p->adjoint()));
      idem = std::max(idem, max_abs(*p * *p - *p));
    }
    sum = std::max(sum, max_abs(pp.plus + pp.minus - id));
    cross = std::max(cross, max_abs(pp.plus * pp.minus));
    symb = std::max(symb, max_abs(h - lam * (pp.plus - pp.minus)) / lam);
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(h, Eigen::EigenvaluesOnly);
    const Eigen::Vector4d expect(-lam, -lam, lam, lam);
    eig = std::max(eig, (es.eigenvalues() - expect).cwiseAbs().maxCoeff() / lam);
  }
  const std::string suite = "projector algebra";
  return {
      tolerance_item(suite, "P± Hermitian", 1e-12, herm),
      tolerance_item(suite, "P± idempotent", 1e-12, idem),
      tolerance_item(suite, "P⁺+P⁻=I", 1e-12, sum),
      tolerance_item(suite, "P⁺P⁻=0", 1e-12, cross),
      tolerance_item(suite, "symbol = λ(P⁺−P⁻)", 1e-12, symb),
      tolerance_item(suite, "eigenvalues ±λ(ξ)", 1e-12, eig),
  };
}

std::vector<CheckItem> check_field_norms(const DiracOperator& op, int fields, std::uint64_t seed) {
  const Grid& g = op.grid();
  const double m = op.mass();
  Rng rng(seed);
  double worst_margin = std::numeric_limits<double>::infinity();
  int violations = 0;
  double split_err = 0, cross_l2 = 0, cross_e = 0, round_trip = 0, sign_plus = 0, sign_minus = 0;
  for (int i = 0; i < fields; ++i) {
    const SpinorField u = random_field(g, rng, 2.0);
    const Spectrum uh = forward(u);
    const double e2 = op.e_inner(uh, uh);
    const double l2 = l2_inner(uh, uh);
    const double margin = (e2 - m * l2) / e2;
    worst_margin = std::min(worst_margin, margin);
    if (e2 < m * l2) ++violations;

    const SpectralSplit sp = op.split(uh);
    const double un = l2_norm(uh);
    split_err = std::max(split_err, l2_norm(sp.plus + sp.minus - uh) / un);
    cross_l2 = std::max(cross_l2, std::abs(l2_inner(sp.plus, sp.minus)) / (un * un));
    cross_e = std::max(cross_e, std::abs(op.e_inner(sp.plus, sp.minus)) / e2);
    round_trip = std::max(round_trip, l2_norm(inverse(uh) - u) / l2_norm(u));
    const double ep = op.e_inner(sp.plus, sp.plus), em = op.e_inner(sp.minus, sp.minus);
    sign_plus = std::max(sign_plus, std::abs(l2_inner(op.apply_symbol(sp.plus), sp.plus) - ep) / ep);
    sign_minus = std::max(sign_minus, std::abs(l2_inner(op.apply_symbol(sp.minus), sp.minus) + em) / em);
  }

  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const Spinor c0{cplx(uni(rng), uni(rng)), cplx(uni(rng), uni(rng)), cplx(uni(rng), uni(rng)),
                  cplx(uni(rng), uni(rng))};
  const Spectrum zero_mode = forward(constant_field(g, c0));
  const double ze2 = op.e_inner(zero_mode, zero_mode);
  const double zero_err = std::abs(ze2 - m * l2_inner(zero_mode, zero_mode)) / ze2;

  const std::string suite = "field norms";
  std::vector<CheckItem> out;
  out.push_back({suite, "(2.1) m‖u‖²_{L²} ≤ ‖u‖²", worst_margin, violations == 0,
                 fmt::format("{} random fields, {} violations, smallest relative margin {:.3e}", fields, violations,
                             worst_margin)});
  out.push_back(tolerance_item(suite, "(2.1) equality on the ξ=0 mode", 1e-12, zero_err));
  out.push_back(tolerance_item(suite, "split reconstructs u", 1e-12, split_err));
  out.push_back(tolerance_item(suite, "split L² orthogonal", 1e-12, cross_l2));
  out.push_back(tolerance_item(suite, "split E orthogonal", 1e-12, cross_e));
  out.push_back(tolerance_item(suite, "transform round trip", 1e-13, round_trip));
  out.push_back(tolerance_item(suite, "(H₀u⁺,u⁺) = ‖u⁺‖²", 1e-12, sign_plus));
  out.push_back(tolerance_item(suite, "(H₀u⁻,u⁻) = −‖u⁻‖²", 1e-12, sign_minus));
  return out;
}

std::vector<CheckItem> check_growth_suite(const NonlinearModel& model, const Grid& grid, std::size_t samples,
                                          std::uint64_t seed) {
  const std::string suite = "growth " + to_string(model.kind);
  std::vector<CheckItem> out;
  if (model.is_null()) {
    out.push_back({suite, "null model", 0.0, true, "f = 0: growth conditions not applicable"});
    return out;
  }
  const GrowthReport rep = check_growth(model, samples, seed);
  for (const auto& c : rep.checks) {
    std::string detail = fmt::format("{} samples, worst relative margin {:.3e}", c.samples, c.worst_margin);
    if (!c.passed)
      detail += fmt::format(" at x=({:.4g},{:.4g},{:.4g}), t={:.6g}", c.witness_x[0], c.witness_x[1], c.witness_x[2],
                            c.witness_t);
    out.push_back({suite, c.name, c.worst_margin, c.passed, detail});
  }

  const GridNonlinearity nl(model, grid);
  Rng rng(seed + 1);
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 10; ++i) {
    SpinorField u = random_field(grid, rng, 1.0), v = random_field(grid, rng, 1.0);
    const double pu = nl.psi(u), pv = nl.psi(v);
    SpinorField mid = 0.5 * (u + v);
    const double slack = 0.5 * (pu + pv) - nl.psi(mid);
    worst = std::min(worst, slack / std::max(pu, pv));
  }
  out.push_back({suite, "Ψ midpoint convexity", worst, worst >= -1e-13,
                 fmt::format("10 random pairs, worst relative slack {:.3e}", worst)});
  return out;
}

std::vector<CheckItem> check_concavity(const Reduction& red, double a, int trials, std::uint64_t seed) {
  const DiracOperator& op = red.op();
  const double m = red.mass();
  const double radius = red.ball_radius(a);
  const InnerOptions inner{1e-9 * a, 500};
  Rng rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  auto random_v = [&]() {
    for (;;) {
      Spectrum v = random_plus(op, rng, 0.5, a);
      if (red.in_v_set(v)) return v;
    }
  };
  auto random_w = [&](double max_frac) {
    Spectrum w = random_minus(op, rng, 1.0, 1.0);
    w *= max_frac * uni(rng) * radius / op.e_norm(w);
    return w;
  };

  double worst_ratio = -std::numeric_limits<double>::infinity();
  double worst_gap = std::numeric_limits<double>::infinity();
  double worst_spread = 0.0;
  int uniqueness_v = 0;
  std::string failure;
  for (int i = 0; i < trials; ++i) {
    const Spectrum v = random_v();
    for (int rep = 0; rep < 2; ++rep) {
      Spectrum w = random_w(0.8);
      if (rep == 1) {
        try {
          w = red.inner_maximize(v, inner).w;
        } catch (const std::exception& e) {
          failure = e.what();
          continue;
        }
      }
      Spectrum z = random_minus(op, rng, 1.0, 1.0);
      z *= 1e-2 * radius / op.e_norm(z);
      worst_ratio = std::max(worst_ratio, red.concavity_ratio(v, w, z, 1.0));
    }
    worst_gap = std::min(worst_gap, red.boundary_gap(v, rng, 4));

    if (i < 10) {
      ++uniqueness_v;
      std::vector<Spectrum> maxima;
      for (int s = 0; s < 5; ++s) {
        const Spectrum w0 = random_w(0.9);
        try {
          maxima.push_back(red.inner_maximize(v, inner, &w0).w);
        } catch (const std::exception& e) {
          failure = e.what();
        }
      }
      for (std::size_t p = 0; p < maxima.size(); ++p)
        for (std::size_t q = p + 1; q < maxima.size(); ++q)
          worst_spread = std::max(worst_spread, op.e_norm(maxima[p] - maxima[q]));
    }
  }

  const std::string suite = "concavity";
  const double ratio_bound = -0.25 + 1e-3;
  const double gap_bound = m * a * a / 16.0 - 1e-3 * a * a;
  const double spread_tol = 10.0 * inner.tol;
  std::vector<CheckItem> out;
  out.push_back({suite, "inner concavity: second differences ≤ −¼‖z‖²", ratio_bound - worst_ratio, worst_ratio <= ratio_bound,
                 fmt::format("{} samples at a={}, largest ratio {:.6f} vs bound {:.6f}", 2 * trials, a, worst_ratio,
                             ratio_bound)});
  out.push_back({suite, "inner boundary gap ≥ m a²/16", (worst_gap - gap_bound) / (a * a), worst_gap >= gap_bound,
                 fmt::format("smallest gap {:.6e} vs bound {:.6e}", worst_gap, gap_bound)});
  const bool unique_ok = failure.empty() && worst_spread <= spread_tol;
  out.push_back({suite, "inner maximizer unique", (spread_tol - worst_spread) / spread_tol, unique_ok,
                 failure.empty() ? fmt::format("{} fields x 5 starts, largest spread {:.3e} vs {:.3e}", uniqueness_v,
                                               worst_spread, spread_tol)
                                 : "inner solve failed: " + failure});
  return out;
}

std::vector<CheckItem> check_gradient(const Reduction& red, double a, int trials, std::uint64_t seed) {
  const DiracOperator& op = red.op();
  const InnerOptions inner{1e-9 * a, 500};
  Rng rng(seed);
  const double t = 1e-5;

  double worst_fd = 0.0, worst_battery = 0.0, worst_identity = 0.0;
  std::string failure;
  for (int i = 0; i < trials; ++i) {
    const Spectrum v = random_plus(op, rng, 0.5, a);
    if (!red.in_v_set(v)) continue;
    Spectrum z = random_plus(op, rng, 0.5, a);
    z.axpy(-l2_inner(z, v) / (a * a), v);
    z *= a / l2_norm(z);
    try {
      const ReducedState st = red.evaluate(v, inner);
      const double analytic = op.e_inner(st.grad_tangent, z);
      auto path = [&](double s) {
        Spectrum p = std::sqrt(1.0 - s * s) * v;
        p.axpy(s, z);
        return red.evaluate(p, inner, &st.w).j_shift;
      };
      const double fd = (path(t) - path(-t)) / (2.0 * t);
      worst_fd = std::max(worst_fd, std::abs(fd - analytic) / std::abs(analytic));
      worst_battery = std::max(worst_battery, red.stationarity_battery(st.g, rng));
      worst_identity = std::max(worst_identity, red.multiplier_identity(st.g, v));
    } catch (const std::exception& e) {
      failure = e.what();
    }
  }

  NonlinearModel null_model;
  null_model.kind = ModelKind::null;
  const Reduction null_red(op, null_model);
  double worst_closed = 0.0;
  for (int i = 0; i < trials; ++i) {
    const Spectrum v = random_plus(op, rng, 0.5, a);
    const Spectrum g = null_red.reduced_gradient(v, inner);
    Spectrum closed = v;
    closed.axpy(-op.e_inner(v, v) / (a * a), op.riesz(v));
    const Spectrum expect = null_red.tangent_project(v, closed);
    worst_closed = std::max(worst_closed, op.e_norm(g - expect) / op.e_norm(expect));
  }

  const std::string suite = "gradient";
  std::vector<CheckItem> out;
  if (!failure.empty()) out.push_back({suite, "reduced state evaluation", -1.0, false, failure});
  out.push_back(tolerance_item(suite, "(3.1) gradient vs sphere-path difference", 1e-4, worst_fd,
                               fmt::format("{} samples at a={}, step {}, worst relative error {:.3e}", trials, a, t,
                                           worst_fd)));
  out.push_back(tolerance_item(suite, "null model closed form", 1e-10, worst_closed));
  out.push_back(tolerance_item(suite, "(2.4) minus-space stationarity", inner.tol, worst_battery));
  out.push_back(tolerance_item(suite, "(3.4) Re(H G(v), v) = 0", 1e-10, worst_identity));
  return out;
}

}  // namespace normdirac::cli
