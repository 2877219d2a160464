#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "normdirac/subspaces.hpp"

namespace normdirac {

double hermite_1d(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite: negative degree");
  double prev = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (n == 0) return prev;
  double cur = std::sqrt(2.0) * x * prev;
  for (int k = 1; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite_function(const MultiIndex& idx, const Vec3& x) {
  return hermite_1d(idx[0], x[0]) * hermite_1d(idx[1], x[1]) * hermite_1d(idx[2], x[2]);
}

std::vector<MultiIndex> hermite_indices(int k) {
  if (k < 0) throw std::invalid_argument("hermite: negative count");
  std::vector<MultiIndex> out;
  for (int deg = 0; static_cast<int>(out.size()) < k; ++deg)
    for (int i = 0; i <= deg && static_cast<int>(out.size()) < k; ++i)
      for (int j = 0; i + j <= deg && static_cast<int>(out.size()) < k; ++j)
        out.push_back({i, j, deg - i - j});
  return out;
}

HermiteBasis::HermiteBasis(int k) : indices_(hermite_indices(k)) {
  if (k <= 0) throw std::invalid_argument("hermite basis: dimension must be positive");
}

double HermiteBasis::combination(const std::vector<double>& c, const Vec3& x) const {
  if (c.size() != indices_.size()) throw std::invalid_argument("hermite basis: coefficient count mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0.0) s += c[i] * hermite_function(indices_[i], x);
  return s;
}

SpinorField periodic_solution_phi(const Grid& grid, const DiracSymbol& sym, double lambda) {
  const double m = sym.mass();
  const double target = std::abs(lambda);
  if (target < m * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "periodic solution: |lambda| = " << target << " lies in the spectral gap (-m, m)";
    throw std::domain_error(os.str());
  }
  const bool upper = lambda > 0.0;
  if (std::abs(target - m) <= 1e-12 * m)
    return constant_field(grid, upper ? Spinor{1.0, 0.0, 0.0, 0.0} : Spinor{0.0, 0.0, 1.0, 0.0});

  for (std::size_t p = 0; p < grid.points(); ++p) {
    const Vec3 xi = grid.wavevector(p);
    if (std::abs(sym.lambda(xi) - target) > 1e-12 * target) continue;
    // Largest column of the spectral projector onto the lambda eigenspace.
    Spinor best{};
    double best_n = 0.0;
    for (int k = 0; k < 4; ++k) {
      Spinor e{};
      e[k] = 1.0;
      const Spinor he = sym.apply(xi, e);
      Spinor col;
      double n2 = 0.0;
      for (int c = 0; c < 4; ++c) {
        col[c] = 0.5 * (e[c] + (upper ? 1.0 : -1.0) * he[c] / target);
        n2 += std::norm(col[c]);
      }
      if (n2 > best_n) {
        best_n = n2;
        best = col;
      }
    }
    const double inv = 1.0 / std::sqrt(best_n);
    SpinorField out(grid);
    for (std::size_t q = 0; q < grid.points(); ++q) {
      const Vec3 x = grid.position(q);
      const cplx phase = std::polar(inv, xi[0] * x[0] + xi[1] * x[1] + xi[2] * x[2]);
      Spinor s;
      for (int c = 0; c < 4; ++c) s[c] = phase * best[c];
      out.set_spinor(q, s);
    }
    return out;
  }
  std::ostringstream os;
  os << "periodic solution: lambda = " << lambda << " is not attained on the frequency lattice";
  throw std::domain_error(os.str());
}

double mean_value(const std::function<double(const Vec3&)>& g, const std::vector<double>& box_sizes, double tol) {
  if (box_sizes.empty()) throw std::invalid_argument("mean value: empty box ladder");
  using Rule = boost::math::quadrature::gauss<double, 8>;
  // Rule stores nonnegative abscissae; odd order has a node at 0.
  std::vector<double> ref_x, ref_w;
  const auto& ab = Rule::abscissa();
  const auto& wt = Rule::weights();
  for (std::size_t i = 0; i < ab.size(); ++i) {
    ref_x.push_back(ab[i]);
    ref_w.push_back(wt[i]);
    if (ab[i] != 0.0) {
      ref_x.push_back(-ab[i]);
      ref_w.push_back(wt[i]);
    }
  }

  double prev = 0.0;
  for (std::size_t r = 0; r < box_sizes.size(); ++r) {
    const double T = box_sizes[r];
    if (!(T > 0.0) || (r > 0 && T <= box_sizes[r - 1]))
      throw std::invalid_argument("mean value: box sizes must be positive and increasing");
    const int panels = std::max(1, static_cast<int>(std::ceil(T)));
    const double hw = 0.5 * T / panels;
    std::vector<double> nodes, weights;
    for (int p = 0; p < panels; ++p) {
      const double mid = (2 * p + 1) * hw;
      for (std::size_t i = 0; i < ref_x.size(); ++i) {
        nodes.push_back(mid + hw * ref_x[i]);
        weights.push_back(hw * ref_w[i]);
      }
    }
    long double sum = 0.0L;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (std::size_t j = 0; j < nodes.size(); ++j)
        for (std::size_t k = 0; k < nodes.size(); ++k)
          sum += weights[i] * weights[j] * weights[k] * g({nodes[i], nodes[j], nodes[k]});
    const double avg = static_cast<double>(sum) / (T * T * T);
    if (r > 0 && std::abs(avg - prev) < tol) return avg;
    prev = avg;
  }
  throw std::runtime_error("mean value: box averages did not settle over the ladder");
}

}  // namespace normdirac
