#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "normdirac/reduction.hpp"

namespace normdirac {

using MultiIndex = std::array<int, 3>;

/// L^2(R)-normalized physicists' Hermite function (2^n n! sqrt(pi))^{-1/2} H_n(x) e^{-x^2/2},
/// by the three-term recurrence.
double hermite_1d(int n, double x);
double hermite_function(const MultiIndex& idx, const Vec3& x);

/// First k multi-indices by total degree, ties lexicographic.
std::vector<MultiIndex> hermite_indices(int k);

class HermiteBasis {
public:
  explicit HermiteBasis(int k);

  int dimension() const { return static_cast<int>(indices_.size()); }
  const std::vector<MultiIndex>& multi_indices() const { return indices_; }
  double operator()(int i, const Vec3& x) const { return hermite_function(indices_[i], x); }
  /// sum_i c_i zeta_i(x).
  double combination(const std::vector<double>& c, const Vec3& x) const;

private:
  std::vector<MultiIndex> indices_;
};

/// e^{i xi.x} chi with (alpha.xi + m beta) chi = lambda chi for a lattice
/// frequency xi with sqrt(|xi|^2 + m^2) = |lambda|. lambda = m gives the
/// constant spinor (1,0,0,0).
SpinorField periodic_solution_phi(const Grid& grid, const DiracSymbol& sym, double lambda);

/// Box averages (1/T^3) int_{[0,T]^3} g over the given increasing box sizes,
/// using composite 8-point Gauss-Legendre panels. Returns the first average
/// within tol of its predecessor; throws std::runtime_error otherwise.
double mean_value(const std::function<double(const Vec3&)>& g, const std::vector<double>& box_sizes,
                  double tol = 1e-8);

/// Grid used at scale n: same points per axis, side max(L, n * box_per_scale).
Grid scaled_grid(const Grid& base, int n, double box_per_scale);

/// (L_n zeta)(x) = n^{-3/2} Phi_m(x) zeta(x / n) with Phi_m = (1,0,0,0), whose
/// mean value M(|Phi_m|^2) is exactly 1.
SpinorField l_k_map(const Grid& grid, int n, const HermiteBasis& basis, const std::vector<double>& coeffs);

struct LkDiagnostics {
  int n = 0;
  double l2_norm = 0.0;
  /// ||(H0 - m) L_n zeta||_{L^2}
  double excess_norm = 0.0;
  /// ((H0 - m) L_n zeta, L_n zeta)_{L^2}
  double excess_pairing = 0.0;
  double minus_l2 = 0.0;
  double plus_e_norm = 0.0;
  /// Fraction of the R^3 mass of L_n zeta captured by the box.
  double captured_mass = 0.0;
  bool leak_warning = false;
};

LkDiagnostics l_k_diagnostics(const Grid& base, double mass, int n, const HermiteBasis& basis,
                              const std::vector<double>& coeffs, double box_per_scale = 8.0);

struct SubspaceOptions {
  double box_per_scale = 8.0;
  /// Z^1 samples per coefficient dimension (low-discrepancy), on top of the 2k signed basis vectors.
  int samples_per_dim = 64;
  std::optional<double> a;
  InnerOptions inner;
};

struct SubspaceReport {
  int k = 0;
  int n = 0;
  double sup_quad = 0.0;  // sup over S_n^k of ||v||_E^2 - m
  double inf_psi = 0.0;   // inf over S_n^k of Psi
  double ratio = 0.0;
  bool injective = false;
  double gram_condition = 0.0;  // smallest / largest eigenvalue of the L^2 Gram matrix
  std::size_t samples = 0;
  bool leak_warning = false;
  double captured_mass = 0.0;
  /// Set when a is supplied.
  std::optional<double> a;
  double level_bound = 0.0;     // sampled sup of J over S_n^k(a)
  double analytic_bound = 0.0;  // (a^2/2) sup||v||^2 - 2^{1-2q} a^q inf Psi
  bool below_half_ma2 = false;
};

SubspaceReport subspace_report(const NonlinearModel& model, double mass, const Grid& base, int k, int n,
                               const SubspaceOptions& opts = {});

/// Sampled sup of J over S_n^k(a).
double level_bound(const NonlinearModel& model, double mass, const Grid& base, int k, int n, double a,
                   const SubspaceOptions& opts = {});

/// Unit sample points on the coefficient sphere of dimension k: 2k signed
/// basis vectors, then samples_per_dim * k Halton points mapped through the
/// normal quantile and normalized (none when k = 1).
std::vector<std::vector<double>> sphere_samples(int k, int samples_per_dim);

}  // namespace normdirac
