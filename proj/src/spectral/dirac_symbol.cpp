#include "normdirac/dirac_symbol.hpp"

#include <cmath>
#include <stdexcept>

namespace normdirac {

namespace {
constexpr cplx I{0.0, 1.0};
}

Matrix2c DiracSymbol::pauli(int k) {
  Matrix2c s = Matrix2c::Zero();
  switch (k) {
    case 0: s(0, 1) = 1.0; s(1, 0) = 1.0; break;
    case 1: s(0, 1) = -I; s(1, 0) = I; break;
    case 2: s(0, 0) = 1.0; s(1, 1) = -1.0; break;
    default: throw std::out_of_range("pauli: index must be 0, 1 or 2");
  }
  return s;
}

DiracSymbol::DiracSymbol(double mass) : mass_(mass) {
  if (!(mass >= 0.0) || !std::isfinite(mass))
    throw std::invalid_argument("dirac symbol: mass must be finite and nonnegative");
  for (int k = 0; k < 3; ++k) {
    alpha_[k] = Matrix4c::Zero();
    alpha_[k].block<2, 2>(0, 2) = pauli(k);
    alpha_[k].block<2, 2>(2, 0) = pauli(k);
  }
  beta_ = Matrix4c::Zero();
  beta_.diagonal() << 1.0, 1.0, -1.0, -1.0;
}

Matrix4c DiracSymbol::at(const Vec3& xi) const {
  return xi[0] * alpha_[0] + xi[1] * alpha_[1] + xi[2] * alpha_[2] + mass_ * beta_;
}

double DiracSymbol::lambda(const Vec3& xi) const {
  return std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2] + mass_ * mass_);
}

Spinor DiracSymbol::apply(const Vec3& xi, const Spinor& c) const {
  // sigma . xi = [[x3, x1 - i x2], [x1 + i x2, -x3]]
  const cplx sp{xi[0], -xi[1]};
  const cplx sm{xi[0], xi[1]};
  const double z = xi[2];
  const cplx s_lo0 = z * c[2] + sp * c[3];
  const cplx s_lo1 = sm * c[2] - z * c[3];
  const cplx s_up0 = z * c[0] + sp * c[1];
  const cplx s_up1 = sm * c[0] - z * c[1];
  return {s_lo0 + mass_ * c[0], s_lo1 + mass_ * c[1], s_up0 - mass_ * c[2],
          s_up1 - mass_ * c[3]};
}

Matrix4c dirac_symbol_at(const Vec3& xi, const DiracSymbol& symbol) { return symbol.at(xi); }

ProjectorPair spectral_projectors(const Vec3& xi, const DiracSymbol& symbol) {
  const double lam = symbol.lambda(xi);
  if (!(lam > 0.0))
    throw std::domain_error("spectral_projectors: lambda(xi) vanishes (m = 0 at xi = 0)");
  const Matrix4c id = Matrix4c::Identity();
  const Matrix4c s = symbol.at(xi) / lam;
  return {0.5 * (id + s), 0.5 * (id - s)};
}

}  // namespace normdirac
