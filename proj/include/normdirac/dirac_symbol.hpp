#pragma once

#include <array>
#include <complex>

#include <Eigen/Core>

#include "normdirac/grid.hpp"

namespace normdirac {

using cplx = std::complex<double>;
using Spinor = std::array<cplx, 4>;
using Matrix4c = Eigen::Matrix<cplx, 4, 4>;
using Matrix2c = Eigen::Matrix<cplx, 2, 2>;

/// Pauli-Dirac representation: alpha_k = [[0, s_k], [s_k, 0]], beta = diag(I, -I).
class DiracSymbol {
public:
  explicit DiracSymbol(double mass);

  double mass() const { return mass_; }
  const Matrix4c& alpha(int k) const { return alpha_[k]; }
  const Matrix4c& beta() const { return beta_; }
  static Matrix2c pauli(int k);

  /// Dense symbol alpha . xi + m beta.
  Matrix4c at(const Vec3& xi) const;
  /// lambda(xi) = sqrt(|xi|^2 + m^2).
  double lambda(const Vec3& xi) const;

  /// (alpha . xi + m beta) c without forming the matrix.
  Spinor apply(const Vec3& xi, const Spinor& c) const;

private:
  double mass_;
  std::array<Matrix4c, 3> alpha_;
  Matrix4c beta_;
};

struct ProjectorPair {
  Matrix4c plus;
  Matrix4c minus;
};

/// P(+/-)(xi) = (I +/- symbol/lambda) / 2. Requires lambda(xi) > 0.
ProjectorPair spectral_projectors(const Vec3& xi, const DiracSymbol& symbol);

Matrix4c dirac_symbol_at(const Vec3& xi, const DiracSymbol& symbol);

}  // namespace normdirac
