#pragma once

#include <vector>

#include "normdirac/dirac_symbol.hpp"
#include "normdirac/fourier.hpp"
#include "normdirac/spinor_field.hpp"

namespace normdirac {

/// Free Dirac operator H0 = -i alpha . grad + m beta on a periodic grid.
///
/// All actions are Fourier multipliers. lambda(xi) = sqrt(|xi|^2 + m^2) is
/// tabulated per mode; the E inner product is (u, v) = Re sum lambda u conj(v).
class DiracOperator {
public:
  DiracOperator(const Grid& grid, double mass);

  const Grid& grid() const { return grid_; }
  const DiracSymbol& symbol() const { return symbol_; }
  double mass() const { return symbol_.mass(); }
  /// lambda per Fourier mode, indexed like the grid.
  const std::vector<double>& lambda() const { return lambda_; }

  Spectrum project_plus(const Spectrum& c) const;
  Spectrum project_minus(const Spectrum& c) const;
  SpectralSplit split(const Spectrum& c) const;
  SpectralSplit split(const SpinorField& u) const;

  Spectrum apply_symbol(const Spectrum& c) const;
  SpinorField apply_h0(const SpinorField& u) const;
  /// |H0|^{-1}: maps an L^2 pairing to its E-Riesz representative.
  Spectrum riesz(const Spectrum& c) const;
  /// Fourier multiplier by an arbitrary per-mode weight.
  Spectrum scale(const Spectrum& c, const std::vector<double>& weight) const;

  double e_inner(const Spectrum& u, const Spectrum& v) const;
  double e_norm(const Spectrum& u) const;
  double e_inner(const SpinorField& u, const SpinorField& v) const;
  double e_norm(const SpinorField& u) const;
  /// Same quadratic form with lambda replaced by lambda - m (nonnegative).
  double excess_quad(const Spectrum& u) const;

  double h_half_norm(const Spectrum& u) const;
  double h_half_norm(const SpinorField& u) const;

private:
  Grid grid_;
  DiracSymbol symbol_;
  std::vector<double> lambda_;
  std::vector<Vec3> xi_;
};

}  // namespace normdirac
