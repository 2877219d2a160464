#include "normdirac/dirac_operator.hpp"

#include <cmath>
#include <stdexcept>

#include "normdirac/detail/accumulate.hpp"

namespace normdirac {

using detail::Accumulator;
using detail::re_dot;

SpinorField constant_field(const Grid& grid, const Spinor& value) {
  SpinorField u(grid);
  for (std::size_t p = 0; p < grid.points(); ++p) u.set_spinor(p, value);
  return u;
}

double l2_inner(const SpinorField& u, const SpinorField& v) {
  if (!(u.grid() == v.grid())) throw std::invalid_argument("l2_inner: grid mismatch");
  Accumulator acc;
  for (std::size_t i = 0; i < u.size(); ++i) acc.add(re_dot(u[i], v[i]));
  return acc.value() * u.grid().cell_volume();
}

double l2_norm(const SpinorField& u) { return std::sqrt(l2_inner(u, u)); }

double l2_inner(const Spectrum& u, const Spectrum& v) {
  if (!(u.grid() == v.grid())) throw std::invalid_argument("l2_inner: grid mismatch");
  Accumulator acc;
  for (std::size_t i = 0; i < u.size(); ++i) acc.add(re_dot(u[i], v[i]));
  return acc.value();
}

double l2_norm(const Spectrum& u) { return std::sqrt(l2_inner(u, u)); }

DiracOperator::DiracOperator(const Grid& grid, double mass) : grid_(grid), symbol_(mass) {
  if (!(mass > 0.0)) throw std::invalid_argument("dirac operator: mass must be positive");
  lambda_.resize(grid.points());
  xi_.resize(grid.points());
  for (std::size_t p = 0; p < grid.points(); ++p) {
    xi_[p] = grid.wavevector(p);
    lambda_[p] = symbol_.lambda(xi_[p]);
  }
}

Spectrum DiracOperator::apply_symbol(const Spectrum& c) const {
  Spectrum out(grid_);
  for (std::size_t p = 0; p < grid_.points(); ++p) out.set_spinor(p, symbol_.apply(xi_[p], c.spinor(p)));
  return out;
}

Spectrum DiracOperator::project_plus(const Spectrum& c) const {
  Spectrum out(grid_);
  for (std::size_t p = 0; p < grid_.points(); ++p) {
    const Spinor s = c.spinor(p);
    const Spinor hs = symbol_.apply(xi_[p], s);
    const double inv = 1.0 / lambda_[p];
    Spinor r;
    for (int k = 0; k < 4; ++k) r[k] = 0.5 * (s[k] + inv * hs[k]);
    out.set_spinor(p, r);
  }
  return out;
}

Spectrum DiracOperator::project_minus(const Spectrum& c) const {
  Spectrum out(grid_);
  for (std::size_t p = 0; p < grid_.points(); ++p) {
    const Spinor s = c.spinor(p);
    const Spinor hs = symbol_.apply(xi_[p], s);
    const double inv = 1.0 / lambda_[p];
    Spinor r;
    for (int k = 0; k < 4; ++k) r[k] = 0.5 * (s[k] - inv * hs[k]);
    out.set_spinor(p, r);
  }
  return out;
}

SpectralSplit DiracOperator::split(const Spectrum& c) const {
  Spectrum plus = project_plus(c);
  Spectrum minus = c - plus;
  return {std::move(plus), std::move(minus)};
}

SpectralSplit DiracOperator::split(const SpinorField& u) const { return split(forward(u)); }

SpinorField DiracOperator::apply_h0(const SpinorField& u) const {
  return inverse(apply_symbol(forward(u)));
}

Spectrum DiracOperator::scale(const Spectrum& c, const std::vector<double>& weight) const {
  Spectrum out(c);
  for (std::size_t p = 0; p < grid_.points(); ++p)
    for (int k = 0; k < 4; ++k) out(p, k) *= weight[p];
  return out;
}

Spectrum DiracOperator::riesz(const Spectrum& c) const {
  Spectrum out(c);
  for (std::size_t p = 0; p < grid_.points(); ++p) {
    const double inv = 1.0 / lambda_[p];
    for (int k = 0; k < 4; ++k) out(p, k) *= inv;
  }
  return out;
}

double DiracOperator::e_inner(const Spectrum& u, const Spectrum& v) const {
  Accumulator acc;
  for (std::size_t p = 0; p < grid_.points(); ++p) {
    double s = 0.0;
    for (int k = 0; k < 4; ++k) s += re_dot(u(p, k), v(p, k));
    acc.add(lambda_[p] * s);
  }
  return acc.value();
}

double DiracOperator::e_norm(const Spectrum& u) const { return std::sqrt(e_inner(u, u)); }

double DiracOperator::e_inner(const SpinorField& u, const SpinorField& v) const {
  return e_inner(forward(u), forward(v));
}

double DiracOperator::e_norm(const SpinorField& u) const { return e_norm(forward(u)); }

double DiracOperator::excess_quad(const Spectrum& u) const {
  Accumulator acc;
  const double m = mass();
  for (std::size_t p = 0; p < grid_.points(); ++p) {
    double s = 0.0;
    for (int k = 0; k < 4; ++k) s += std::norm(u(p, k));
    const Vec3& xi = xi_[p];
    const double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    acc.add(xi2 / (lambda_[p] + m) * s);
  }
  return acc.value();
}

double DiracOperator::h_half_norm(const Spectrum& u) const {
  Accumulator acc;
  for (std::size_t p = 0; p < grid_.points(); ++p) {
    const Vec3& xi = xi_[p];
    const double w = std::sqrt(1.0 + xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    double s = 0.0;
    for (int k = 0; k < 4; ++k) s += std::norm(u(p, k));
    acc.add(w * s);
  }
  return std::sqrt(acc.value());
}

double DiracOperator::h_half_norm(const SpinorField& u) const { return h_half_norm(forward(u)); }

}  // namespace normdirac
