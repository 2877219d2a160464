#include "normdirac/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "normdirac/detail/accumulate.hpp"

namespace normdirac {

namespace {

double sum_sq(const Spectrum& c) { return l2_inner(c, c); }

// Per-mode multiply: out = x * (factor(lambda)).
template <class F>
Spectrum per_mode(const DiracOperator& op, const Spectrum& x, F factor) {
  Spectrum out(x);
  const auto& lam = op.lambda();
  for (std::size_t p = 0; p < lam.size(); ++p) {
    const double k = factor(lam[p]);
    for (int c = 0; c < 4; ++c) out(p, c) *= k;
  }
  return out;
}

}  // namespace

Reduction::Reduction(const DiracOperator& op, const NonlinearModel& model)
    : op_(op), nl_(model, op.grid()) {}

bool Reduction::in_v_set(const Spectrum& v) const {
  return op_.e_inner(v, v) < (mass() + 1.0) * sum_sq(v);
}

double Reduction::ball_radius(double a) const { return 0.5 * std::sqrt(mass()) * a; }

void Reduction::check_domain(const Spectrum& v, double a, const Spectrum& w) const {
  const double ve2 = op_.e_inner(v, v);
  if (!(ve2 < (mass() + 1.0) * a * a)) {
    std::ostringstream os;
    os << "h: v outside V (||v||_E^2 = " << ve2 << ", (m+1)||v||_L2^2 = " << (mass() + 1.0) * a * a << ")";
    throw std::domain_error(os.str());
  }
  const double we = op_.e_norm(w);
  const double radius = ball_radius(a);
  if (we > radius * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "h: w outside the ball (||w||_E = " << we << ", radius sqrt(m)||v||_L2/2 = " << radius << ")";
    throw std::domain_error(os.str());
  }
}

Reduction::HEval Reduction::eval_h(const Spectrum& v, double a, const Spectrum& w) const {
  check_domain(v, a, w);
  const double wl2 = sum_sq(w);
  const double s = std::sqrt(a * a - wl2);
  Spectrum h = (s / a) * v;
  h += w;
  if (nl_.is_null()) return {wl2, s, std::move(h), 0.0, Spectrum(op_.grid())};
  auto ev = nl_.evaluate(inverse(h));
  return {wl2, s, std::move(h), ev.psi, forward(ev.gradient)};
}

Spectrum Reduction::h_map_spectrum(const Spectrum& v, const Spectrum& w) const {
  const double a = l2_norm(v);
  check_domain(v, a, w);
  const double s = std::sqrt(a * a - sum_sq(w));
  Spectrum h = (s / a) * v;
  h += w;
  return h;
}

SpinorField Reduction::h_map(const Spectrum& v, const Spectrum& w) const {
  return inverse(h_map_spectrum(v, w));
}

double Reduction::energy(const SpinorField& u) const {
  const SpectralSplit sp = op_.split(u);
  return 0.5 * op_.e_inner(sp.plus, sp.plus) - 0.5 * op_.e_inner(sp.minus, sp.minus) - nl_.psi(u);
}

double Reduction::inner_objective(const Spectrum& v, const Spectrum& w) const {
  const double a = l2_norm(v);
  const HEval e = eval_h(v, a, w);
  const double ve2 = op_.e_inner(v, v);
  return -0.5 * (e.w_l2sq / (a * a)) * ve2 - 0.5 * op_.e_inner(w, w) - e.psi;
}

Reduction::InnerStep Reduction::inner_step(const Spectrum& v, double a, double v_e2,
                                           const Spectrum& w) const {
  HEval e = eval_h(v, a, w);
  const double c = v_e2 / (a * a) - l2_inner(e.fh, v) / (a * e.s);
  // grad = -w - (P-(f h) + c w) / lambda
  Spectrum pm = op_.project_minus(e.fh);
  pm.axpy(c, w);
  Spectrum grad = op_.riesz(pm);
  grad *= -1.0;
  grad -= w;
  const double gn = op_.e_norm(grad);
  return {std::move(e), c, std::move(grad), gn};
}

Spectrum Reduction::inner_gradient(const Spectrum& v, const Spectrum& w) const {
  const double a = l2_norm(v);
  const double we = op_.e_norm(w);
  const double radius = ball_radius(a);
  if (we >= radius * (1.0 - 1e-10)) {
    std::ostringstream os;
    os << "inner gradient: w within 1e-10 of the ball boundary (||w||_E = " << we << ", radius = " << radius << ")";
    throw std::domain_error(os.str());
  }
  return inner_step(v, a, op_.e_inner(v, v), w).grad;
}

InnerResult Reduction::inner_maximize(const Spectrum& v, const InnerOptions& opts,
                                      const Spectrum* w_start) const {
  const double a = l2_norm(v);
  if (!(a > 0.0)) throw std::domain_error("inner maximization: v must be nonzero");
  const double tol = opts.tol > 0.0 ? opts.tol : 1e-9 * a;
  const double radius = ball_radius(a);
  const double guard = (1.0 - 1e-8) * radius;
  const double ve2 = op_.e_inner(v, v);

  auto clamp = [&](Spectrum& w) {
    const double n = op_.e_norm(w);
    if (n > guard) w *= guard / n;
  };

  Spectrum w = w_start ? *w_start : Spectrum(op_.grid());
  clamp(w);
  InnerStep st = inner_step(v, a, ve2, w);
  int iters = 0;
  double theta = 1.0;
  while (st.grad_norm > tol && iters < opts.max_iter) {
    ++iters;
    // Diagonal Newton step: the Hessian of I o h at fixed c is -(lambda + c) / lambda
    // per mode plus the small nonlinear part.
    const double c = st.c;
    Spectrum step = per_mode(op_, st.grad, [c](double lam) { return lam + c > 0.0 ? lam / (lam + c) : 1.0; });
    Spectrum trial = w;
    trial.axpy(theta, step);
    clamp(trial);
    InnerStep next = inner_step(v, a, ve2, trial);
    if (next.grad_norm < st.grad_norm || theta < 1e-8) {
      w = std::move(trial);
      st = std::move(next);
      theta = std::min(1.0, 2.0 * theta);
    } else {
      theta *= 0.5;
    }
  }

  InnerCertificate cert;
  cert.gradient_norm = st.grad_norm;
  cert.iterations = iters;
  cert.converged = st.grad_norm <= tol;
  cert.ball_fraction = op_.e_norm(w) / radius;
  cert.interior = cert.ball_fraction < 1.0 - 1e-6;
  if (!cert.converged) {
    std::ostringstream os;
    os << "inner maximization did not converge in " << opts.max_iter << " iterations (gradient "
       << st.grad_norm << ", tol " << tol << ")";
    throw InnerSolveError(os.str(), cert);
  }
  if (!cert.interior) {
    std::ostringstream os;
    os << "inner maximizer reached the ball boundary (||w||_E / radius = " << cert.ball_fraction
       << "); a is outside the small-norm regime";
    throw InnerSolveError(os.str(), cert);
  }
  return {std::move(w), cert};
}

double Reduction::concavity_ratio(const Spectrum& v, const Spectrum& w, const Spectrum& z,
                                  double eps) const {
  Spectrum wp = w;
  wp.axpy(eps, z);
  Spectrum wm = w;
  wm.axpy(-eps, z);
  const double fp = inner_objective(v, wp);
  const double f0 = inner_objective(v, w);
  const double fm = inner_objective(v, wm);
  return (fp - 2.0 * f0 + fm) / (eps * eps * op_.e_inner(z, z));
}

double Reduction::boundary_gap(const Spectrum& v, Rng& rng, int directions) const {
  const double a = l2_norm(v);
  const double radius = ball_radius(a);
  const double base = inner_objective(v, Spectrum(op_.grid()));
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < directions; ++i) {
    Spectrum z = random_minus(op_, rng, 1.0, 1.0);
    z *= radius / op_.e_norm(z);
    gap = std::min(gap, base - inner_objective(v, z));
  }
  return gap;
}

SpinorField Reduction::reduce(const Spectrum& v, const InnerOptions& opts) const {
  const InnerResult r = inner_maximize(v, opts);
  return h_map(v, r.w);
}

Spectrum Reduction::residual_spectrum(const Spectrum& u_hat, double* kappa_out) const {
  const Spectrum up = op_.project_plus(u_hat);
  const double den = sum_sq(up);
  if (!(den > 0.0)) throw std::domain_error("kappa: plus part of u vanishes");
  Spectrum fu(op_.grid());
  if (!nl_.is_null()) fu = forward(nl_.gradient(inverse(u_hat)));
  const double k = (op_.e_inner(up, up) - l2_inner(fu, up)) / den;
  if (kappa_out) *kappa_out = k;
  Spectrum r = op_.apply_symbol(u_hat);
  r -= fu;
  r.axpy(-k, u_hat);
  return r;
}

double Reduction::kappa(const SpinorField& u) const {
  const Spectrum up = op_.project_plus(forward(u));
  const double den = sum_sq(up);
  if (!(den > 0.0)) throw std::domain_error("kappa: plus part of u vanishes");
  Spectrum fu(op_.grid());
  if (!nl_.is_null()) fu = forward(nl_.gradient(u));
  return (op_.e_inner(up, up) - l2_inner(fu, up)) / den;
}

SpinorField Reduction::pde_residual(const SpinorField& u) const {
  return inverse(residual_spectrum(forward(u), nullptr));
}

double Reduction::relative_residual(const SpinorField& u) const {
  const Spectrum uh = forward(u);
  const Spectrum r = residual_spectrum(uh, nullptr);
  return l2_norm(r) / l2_norm(op_.apply_symbol(uh));
}

Spectrum Reduction::tangent_project(const Spectrum& v, const Spectrum& z) const {
  const Spectrum nu = op_.riesz(v);
  const double coef = l2_inner(z, v) / l2_inner(nu, v);
  Spectrum out = z;
  out.axpy(-coef, nu);
  return out;
}

ReducedState Reduction::evaluate(const Spectrum& v, const InnerOptions& opts,
                                 const Spectrum* w_start) const {
  const double a = l2_norm(v);
  InnerResult inner = inner_maximize(v, opts, w_start);
  const double ve2 = op_.e_inner(v, v);
  InnerStep st = inner_step(v, a, ve2, inner.w);

  ReducedState out{v, a, std::move(inner.w), inverse(st.e.h), st.c, 0.0, 0.0, Spectrum(op_.grid()), 0.0,
                   st.grad_norm, inner.certificate.iterations};
  const double phi = -0.5 * (st.e.w_l2sq / (a * a)) * ve2 - 0.5 * op_.e_inner(out.w, out.w) - st.e.psi;
  out.j_shift = 0.5 * op_.excess_quad(v) + phi;
  out.j_val = 0.5 * mass() * a * a + out.j_shift;

  // (s/a) [ (s/a) v - P+(f h) / lambda ]
  const double sa = st.e.s / a;
  Spectrum full = op_.riesz(op_.project_plus(st.e.fh));
  full *= -1.0;
  full.axpy(sa, v);
  full *= sa;
  out.grad_tangent = tangent_project(v, full);
  out.grad_norm = op_.e_norm(out.grad_tangent);
  return out;
}

double Reduction::reduced_value(const Spectrum& v, const InnerOptions& opts) const {
  return evaluate(v, opts).j_val;
}

Spectrum Reduction::reduced_gradient(const Spectrum& v, const InnerOptions& opts) const {
  return evaluate(v, opts).grad_tangent;
}

double Reduction::stationarity_battery(const SpinorField& g, Rng& rng) const {
  const Spectrum r = residual_spectrum(forward(g), nullptr);
  std::vector<Spectrum> tests = lowest_minus_modes(op_, 8);
  for (int i = 0; i < 32; ++i) tests.push_back(random_minus(op_, rng, 2.0, 1.0));
  double worst = 0.0;
  for (const auto& z : tests) worst = std::max(worst, std::abs(l2_inner(r, z)) / op_.e_norm(z));
  return worst;
}

double Reduction::multiplier_identity(const SpinorField& g, const Spectrum& v) const {
  const Spectrum gh = forward(g);
  const Spectrum r = residual_spectrum(gh, nullptr);
  return std::abs(l2_inner(r, v)) / (l2_norm(op_.apply_symbol(gh)) * l2_norm(v));
}

std::vector<Spectrum> lowest_minus_modes(const DiracOperator& op, std::size_t count) {
  const Grid& g = op.grid();
  std::vector<std::size_t> order(g.points());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return op.lambda()[i] < op.lambda()[j]; });
  std::vector<Spectrum> out;
  const DiracSymbol& sym = op.symbol();
  for (std::size_t idx : order) {
    const Vec3 xi = g.wavevector(idx);
    const double lam = op.lambda()[idx];
    for (int k : {2, 3}) {
      if (out.size() == count) return out;
      Spinor e{};
      e[k] = 1.0;
      const Spinor he = sym.apply(xi, e);
      Spectrum z(g);
      double n2 = 0.0;
      for (int c = 0; c < 4; ++c) {
        z(idx, c) = 0.5 * (e[c] - he[c] / lam);
        n2 += std::norm(z(idx, c));
      }
      z *= 1.0 / std::sqrt(n2);
      out.push_back(std::move(z));
    }
  }
  return out;
}

double estimate_a_max(const Reduction& red, const Vec3& center, const AMaxOptions& opts) {
  const DiracOperator& op = red.op();
  auto certified = [&](double a) {
    Rng rng(opts.seed);
    for (int i = 0; i < opts.samples; ++i) {
      const Spectrum v = i == 0 ? gaussian_plus(op, center, 3.0, Spinor{1.0, 0.0, 0.0, 0.0}, a)
                                : random_plus(op, rng, 0.5, a);
      if (!red.in_v_set(v)) continue;
      InnerResult inner = [&]() -> InnerResult {
        try {
          return red.inner_maximize(v, InnerOptions{});
        } catch (const InnerSolveError&) {
          return {Spectrum(op.grid()), InnerCertificate{0.0, 0, false, 1.0, false}};
        }
      }();
      if (!inner.certificate.converged) return false;
      const double radius = red.ball_radius(a);
      for (int d = 0; d < opts.directions; ++d) {
        Spectrum z = random_minus(op, rng, 1.0, 1.0);
        z *= 1e-2 * radius / op.e_norm(z);
        if (op.e_norm(inner.w) + 1e-2 * radius >= radius) return false;
        if (red.concavity_ratio(v, inner.w, z, 1.0) > -0.125) return false;
      }
    }
    return true;
  };

  if (!certified(opts.lo)) return opts.lo;
  if (certified(opts.hi)) return opts.hi;
  double lo = opts.lo, hi = opts.hi;
  for (int i = 0; i < opts.bisections; ++i) {
    const double mid = std::sqrt(lo * hi);
    (certified(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace normdirac
