#include <Eigen/Dense>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "normdirac/subspaces.hpp"

namespace normdirac {

Grid scaled_grid(const Grid& base, int n, double box_per_scale) {
  if (n <= 0) throw std::invalid_argument("scaled grid: n must be positive");
  return Grid(base.n_per_axis(), std::max(base.box_length(), n * box_per_scale));
}

SpinorField l_k_map(const Grid& grid, int n, const HermiteBasis& basis, const std::vector<double>& coeffs) {
  if (n <= 0) throw std::invalid_argument("L_n: n must be positive");
  const double pre = std::pow(static_cast<double>(n), -1.5);
  const double inv_n = 1.0 / n;
  SpinorField out(grid);
  for (std::size_t p = 0; p < grid.points(); ++p) {
    const Vec3 x = grid.position(p);
    out(p, 0) = pre * basis.combination(coeffs, {x[0] * inv_n, x[1] * inv_n, x[2] * inv_n});
  }
  return out;
}

LkDiagnostics l_k_diagnostics(const Grid& base, double mass, int n, const HermiteBasis& basis,
                              const std::vector<double>& coeffs, double box_per_scale) {
  const Grid g = scaled_grid(base, n, box_per_scale);
  const DiracOperator op(g, mass);
  const SpinorField u = l_k_map(g, n, basis, coeffs);
  const Spectrum uh = forward(u);
  Spectrum ex = op.apply_symbol(uh);
  ex.axpy(-mass, uh);
  const SpectralSplit sp = op.split(uh);

  double zeta2 = 0.0;
  for (double c : coeffs) zeta2 += c * c;

  LkDiagnostics d;
  d.n = n;
  d.l2_norm = l2_norm(uh);
  d.excess_norm = l2_norm(ex);
  d.excess_pairing = l2_inner(ex, uh);
  d.minus_l2 = l2_norm(sp.minus);
  d.plus_e_norm = op.e_norm(sp.plus);
  d.captured_mass = d.l2_norm * d.l2_norm / zeta2;
  d.leak_warning = d.captured_mass < 0.999;
  return d;
}

std::vector<std::vector<double>> sphere_samples(int k, int samples_per_dim) {
  if (k <= 0) throw std::invalid_argument("sphere samples: k must be positive");
  std::vector<std::vector<double>> out;
  for (int i = 0; i < k; ++i)
    for (double sgn : {1.0, -1.0}) {
      std::vector<double> c(k, 0.0);
      c[i] = sgn;
      out.push_back(std::move(c));
    }
  if (k == 1) return out;

  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  if (k > static_cast<int>(std::size(primes))) throw std::invalid_argument("sphere samples: k too large");
  const boost::math::normal_distribution<double> normal;
  const int count = samples_per_dim * k;
  for (int idx = 1; idx <= count; ++idx) {
    std::vector<double> c(k);
    double n2 = 0.0;
    for (int d = 0; d < k; ++d) {
      // radical inverse of idx in base primes[d]
      double f = 1.0, r = 0.0;
      for (int i = idx; i > 0; i /= primes[d]) {
        f /= primes[d];
        r += f * (i % primes[d]);
      }
      c[d] = boost::math::quantile(normal, r);
      n2 += c[d] * c[d];
    }
    if (!(n2 > 0.0)) continue;
    for (double& x : c) x /= std::sqrt(n2);
    out.push_back(std::move(c));
  }
  return out;
}

SubspaceReport subspace_report(const NonlinearModel& model, double mass, const Grid& base, int k, int n,
                               const SubspaceOptions& opts) {
  const Grid g = scaled_grid(base, n, opts.box_per_scale);
  const DiracOperator op(g, mass);
  const HermiteBasis basis(k);
  const GridNonlinearity nl(model, g);

  std::vector<Spectrum> plus;
  std::vector<SpinorField> plus_x;
  double captured = 1.0;
  for (int i = 0; i < k; ++i) {
    std::vector<double> e(k, 0.0);
    e[i] = 1.0;
    const Spectrum full = forward(l_k_map(g, n, basis, e));
    captured = std::min(captured, l2_inner(full, full));
    plus.push_back(op.project_plus(full));
    plus_x.push_back(inverse(plus.back()));
  }

  Eigen::MatrixXd gl2(k, k), ge(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      gl2(i, j) = l2_inner(plus[i], plus[j]);
      ge(i, j) = op.e_inner(plus[i], plus[j]);
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gl2);
  const double emin = eig.eigenvalues().minCoeff();
  const double emax = eig.eigenvalues().maxCoeff();

  SubspaceReport rep;
  rep.k = k;
  rep.n = n;
  rep.gram_condition = emax > 0.0 ? emin / emax : 0.0;
  rep.injective = emin > 0.0 && rep.gram_condition > 1e-8;
  rep.captured_mass = captured;
  rep.leak_warning = captured < 0.999;

  auto samples = sphere_samples(k, opts.samples_per_dim);
  if (rep.injective) {
    // The sup of the Rayleigh quotient is attained at the top generalized eigenvector.
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> gen(ge, gl2);
    Eigen::VectorXd top = gen.eigenvectors().col(k - 1);
    top /= top.norm();
    samples.emplace_back(top.data(), top.data() + k);
  }
  rep.samples = samples.size();

  std::optional<Reduction> red;
  if (opts.a) red.emplace(op, model);
  rep.sup_quad = -std::numeric_limits<double>::infinity();
  rep.inf_psi = std::numeric_limits<double>::infinity();
  double sup_j = -std::numeric_limits<double>::infinity();
  double sup_shift = -std::numeric_limits<double>::infinity();
  for (const auto& c : samples) {
    Eigen::Map<const Eigen::VectorXd> cv(c.data(), k);
    const double l2sq = cv.dot(gl2 * cv);
    if (!(l2sq > 0.0)) continue;
    const double inv = 1.0 / std::sqrt(l2sq);
    rep.sup_quad = std::max(rep.sup_quad, cv.dot(ge * cv) / l2sq - mass);
    SpinorField vx(g);
    for (int i = 0; i < k; ++i) vx.axpy(c[i] * inv, plus_x[i]);
    rep.inf_psi = std::min(rep.inf_psi, nl.psi(vx));
    if (red) {
      Spectrum v(g);
      for (int i = 0; i < k; ++i) v.axpy(c[i] * inv * *opts.a, plus[i]);
      const ReducedState st = red->evaluate(v, opts.inner);
      if (st.j_shift > sup_shift) {
        sup_shift = st.j_shift;
        sup_j = st.j_val;
      }
    }
  }
  rep.ratio = rep.inf_psi > 0.0 ? rep.sup_quad / rep.inf_psi : std::numeric_limits<double>::infinity();
  if (opts.a) {
    const double a = *opts.a;
    const double q = model.upper_exponent();
    rep.a = a;
    rep.level_bound = sup_j;
    rep.analytic_bound = 0.5 * a * a * (rep.sup_quad + mass) - std::pow(2.0, 1.0 - 2.0 * q) * std::pow(a, q) * rep.inf_psi;
    rep.below_half_ma2 = sup_shift < 0.0;
  }
  return rep;
}

double level_bound(const NonlinearModel& model, double mass, const Grid& base, int k, int n, double a,
                   const SubspaceOptions& opts) {
  SubspaceOptions o = opts;
  o.a = a;
  return subspace_report(model, mass, base, k, n, o).level_bound;
}

}  // namespace normdirac
