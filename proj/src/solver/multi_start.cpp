#include <cmath>
#include <sstream>

#include "normdirac/detail/accumulate.hpp"
#include "normdirac/solver.hpp"
#include "normdirac/subspaces.hpp"

namespace normdirac {

bool records_distinct(const SolutionRecord& x, const SolutionRecord& y) {
  if (!(x.u.grid() == y.u.grid())) return true;
  detail::Accumulator acc;
  for (std::size_t p = 0; p < x.u.points(); ++p) {
    const Spinor s = x.u.spinor(p), t = y.u.spinor(p);
    double rx = 0.0, ry = 0.0;
    for (int c = 0; c < 4; ++c) {
      rx += std::norm(s[c]);
      ry += std::norm(t[c]);
    }
    acc.add(std::abs(rx - ry));
  }
  const double a2 = 0.5 * (x.a * x.a + y.a * y.a);
  const double density_gap = acc.value() * x.u.grid().cell_volume() / a2;
  const double omega_gap = std::abs(x.omega - y.omega) / std::max(1.0, std::abs(x.omega));
  return density_gap > 1e-3 || omega_gap > 1e-7;
}

namespace {

std::vector<std::pair<std::string, Spectrum>> hermite_starts(const DiracOperator& op, double a, int k) {
  const Grid& g = op.grid();
  const int n = std::max(1, static_cast<int>(std::lround(g.box_length() / 8.0)));
  const HermiteBasis basis(k);
  std::vector<std::pair<std::string, std::vector<double>>> combos;
  for (int i = 0; i < k; ++i) {
    std::vector<double> c(k, 0.0);
    c[i] = 1.0;
    combos.emplace_back("hermite " + std::to_string(i), std::move(c));
  }
  if (k >= 2) {
    const double r = std::sqrt(0.5);
    std::vector<double> sym(k, 0.0), anti(k, 0.0);
    sym[0] = sym[1] = r;
    anti[0] = r;
    anti[1] = -r;
    combos.emplace_back("hermite symmetric", std::move(sym));
    combos.emplace_back("hermite antisymmetric", std::move(anti));
  }
  std::vector<std::pair<std::string, Spectrum>> out;
  for (auto& [name, c] : combos) {
    Spectrum v = op.project_plus(forward(l_k_map(g, n, basis, c)));
    v *= a / l2_norm(v);
    out.emplace_back(name, std::move(v));
  }
  return out;
}

}  // namespace

MultiStartResult multi_start_deflated(const Reduction& red, double a, int k, const SolverOptions& opts,
                                      int random_starts) {
  opts.validate();
  if (k < 1) throw std::invalid_argument("multi-start: k must be at least 1");
  if (random_starts < 0) throw std::invalid_argument("multi-start: random_starts must be nonnegative");
  if (a > opts.a_max) {
    std::ostringstream os;
    os << "multi-start: a = " << a << " exceeds a_max = " << opts.a_max;
    throw std::invalid_argument(os.str());
  }
  const DiracOperator& op = red.op();
  MultiStartResult out;
  out.requested = k;

  auto starts = hermite_starts(op, a, k);
  Rng rng(opts.seed);
  for (int i = 0; i < random_starts; ++i)
    starts.emplace_back("random " + std::to_string(i), random_plus(op, rng, 0.5, a));

  SolverOptions deflated = opts;
  deflated.max_outer = std::min(opts.max_outer, 300);
  Deflation defl(op, opts.deflation_strength);
  for (const auto& [name, v0] : starts) {
    ++out.starts;
    if (!red.in_v_set(v0)) {
      out.diagnostics.push_back(name + ": start outside V, skipped");
      continue;
    }
    try {
      const SolutionRecord pushed = minimize_on_sphere(red, a, v0, deflated, &defl);
      SolutionRecord r = minimize_on_sphere(red, a, pushed.v_star, opts);
      if (!r.converged) {
        out.diagnostics.push_back(name + ": not verified without deflation (" + to_string(r.status) + ")");
        continue;
      }
      bool fresh = true;
      for (const auto& prev : out.records)
        if (!records_distinct(prev, r)) fresh = false;
      if (!fresh) {
        out.diagnostics.push_back(name + ": duplicate of an earlier solution");
        continue;
      }
      defl.add(r.v_star);
      out.records.push_back(std::move(r));
      out.diagnostics.push_back(name + ": new solution");
    } catch (const std::exception& e) {
      out.diagnostics.push_back(name + ": " + e.what());
    }
  }
  if (static_cast<int>(out.records.size()) < k) {
    std::ostringstream os;
    os << "found " << out.records.size() << " distinct solution(s), " << k << " requested";
    out.diagnostics.push_back(os.str());
  }

  const std::size_t n = out.records.size();
  out.distinct.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      out.distinct[i][j] = out.distinct[j][i] = records_distinct(out.records[i], out.records[j]);
  return out;
}

}  // namespace normdirac
