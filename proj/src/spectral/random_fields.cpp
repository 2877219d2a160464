#include "normdirac/random_fields.hpp"

#include <cmath>
#include <stdexcept>

namespace normdirac {

Spectrum random_spectrum(const Grid& grid, Rng& rng, double bandwidth) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Spectrum c(grid);
  for (std::size_t p = 0; p < grid.points(); ++p) {
    double env = 1.0;
    if (bandwidth > 0.0) {
      const Vec3 xi = grid.wavevector(p);
      const double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
      env = std::exp(-0.5 * xi2 / (bandwidth * bandwidth));
    }
    for (int k = 0; k < 4; ++k) {
      const double re = normal(rng);
      const double im = normal(rng);
      c(p, k) = env * cplx{re, im};
    }
  }
  return c;
}

SpinorField random_field(const Grid& grid, Rng& rng, double bandwidth) {
  return inverse(random_spectrum(grid, rng, bandwidth));
}

namespace {

Spectrum normalized(Spectrum c, double l2) {
  const double n = l2_norm(c);
  if (!(n > 0.0)) throw std::domain_error("random field: zero projection");
  c *= l2 / n;
  return c;
}

}  // namespace

Spectrum random_plus(const DiracOperator& op, Rng& rng, double bandwidth, double l2) {
  return normalized(op.project_plus(random_spectrum(op.grid(), rng, bandwidth)), l2);
}

Spectrum random_minus(const DiracOperator& op, Rng& rng, double bandwidth, double l2) {
  return normalized(op.project_minus(random_spectrum(op.grid(), rng, bandwidth)), l2);
}

Spectrum gaussian_plus(const DiracOperator& op, const Vec3& center, double width,
                       const Spinor& spinor, double l2) {
  const Grid& g = op.grid();
  SpinorField u(g);
  const double L = g.box_length();
  for (std::size_t p = 0; p < g.points(); ++p) {
    const Vec3 x = g.position(p);
    double r2 = 0.0;
    for (int d = 0; d < 3; ++d) {
      // minimum-image distance on the periodic box
      double dx = x[d] - center[d];
      dx -= L * std::round(dx / L);
      r2 += dx * dx;
    }
    const double env = std::exp(-0.5 * r2 / (width * width));
    Spinor s;
    for (int k = 0; k < 4; ++k) s[k] = env * spinor[k];
    u.set_spinor(p, s);
  }
  return normalized(op.project_plus(forward(u)), l2);
}

}  // namespace normdirac
