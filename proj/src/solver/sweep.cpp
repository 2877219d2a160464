#include <cmath>
#include <sstream>

#include "normdirac/solver.hpp"

namespace normdirac {

SweepResult bifurcation_sweep(const Reduction& red, const std::vector<double>& a_values, const SolverOptions& opts,
                              const Vec3& center) {
  if (a_values.empty()) throw std::invalid_argument("sweep: a_values is empty");
  for (std::size_t i = 0; i < a_values.size(); ++i) {
    if (!(a_values[i] > 0.0)) throw std::invalid_argument("sweep: a values must be positive");
    if (i > 0 && !(a_values[i] < a_values[i - 1]))
      throw std::invalid_argument("sweep: a values must be strictly decreasing");
    if (a_values[i] > opts.a_max) {
      std::ostringstream os;
      os << "sweep: a = " << a_values[i] << " exceeds a_max = " << opts.a_max;
      throw std::invalid_argument(os.str());
    }
  }

  const double m = red.mass();
  const double p = red.model().p;
  SweepResult out;
  Spectrum start = default_start(red.op(), a_values.front(), center);
  for (std::size_t i = 0; i < a_values.size(); ++i) {
    const double a = a_values[i];
    if (i > 0) {
      const auto& prev = out.rows.back();
      // Warm start from the previous minimizer, rescaled onto the new sphere.
      start = prev.converged ? (a / prev.a) * prev.v_star : default_start(red.op(), a, center);
    }
    out.rows.push_back(minimize_on_sphere(red, a, start, opts));
    const auto& r = out.rows.back();
    if (!r.converged) {
      std::ostringstream os;
      os << "row a=" << a << " did not converge (" << to_string(r.status) << ")";
      out.warnings.push_back(os.str());
    }
  }

  out.fit_valid = true;
  for (const auto& r : out.rows)
    if (!r.converged || !(m - r.omega > 0.0)) out.fit_valid = false;

  out.gap_decreasing = true;
  out.hhalf_decreasing = true;
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    const auto& a0 = out.rows[i - 1];
    const auto& a1 = out.rows[i];
    if (!(m - a1.omega < m - a0.omega)) out.gap_decreasing = false;
    if (!(a1.u_hhalf < a0.u_hhalf)) out.hhalf_decreasing = false;
    if (a1.omega < a0.omega) {
      std::ostringstream os;
      os << "omega decreased from " << a0.omega << " to " << a1.omega << " as a went " << a0.a << " -> " << a1.a;
      out.warnings.push_back(os.str());
    }
  }

  // Least squares on the rows with a positive gap.
  double sx = 0, sy = 0, sxx = 0, sxy = 0, cxy = 0, cxx = 0;
  int cnt = 0;
  for (const auto& r : out.rows) {
    const double gap = m - r.omega;
    if (!(gap > 0.0)) continue;
    const double x = std::log(r.a), y = std::log(gap);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    const double ap = std::pow(r.a, p - 2.0);
    cxy += ap * gap;
    cxx += ap * ap;
    ++cnt;
  }
  if (cnt >= 2) out.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  else out.fit_valid = false;
  if (cnt >= 1) out.gap_constant = cxy / cxx;
  return out;
}

}  // namespace normdirac
