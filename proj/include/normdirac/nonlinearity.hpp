#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "normdirac/spinor_field.hpp"

namespace normdirac {

enum class ModelKind { pure_power, two_power, null };
enum class WeightForm { inverse_poly, bump };

/// Spatial weight r(x) = f(x, 1).
///
/// inverse_poly: r0 (1 + |x|^2)^(-sigma/2).
/// bump: r0 exp(1 - 1 / (1 - sigma^2 |x|^2)) inside |x| < 1/sigma, zero outside.
struct WeightSpec {
  double amplitude = 1.0;
  double decay_rate = 0.2;
  WeightForm form = WeightForm::inverse_poly;

  double operator()(const Vec3& x) const;
  /// sup of r over |x| >= radius (both forms are radially nonincreasing).
  double tail_sup(double radius) const;
};

/// f(x, t) = r(x) g(t) with g(t) = t^(p-2) (pure_power) or t^(p-2) + t^(q-2)
/// (two_power); null has f = F = 0.
struct NonlinearModel {
  ModelKind kind = ModelKind::pure_power;
  double p = 2.5;
  double q = 2.5;
  WeightSpec weight;
  double growth_alpha = 2.5;
  double tau = 0.2;
  /// Unset means r0 / (p 2^(tau/2)), valid for inverse_poly with sigma <= tau
  /// and growth_alpha = p.
  std::optional<double> lower_const;
  double t0 = 1.0;
  Vec3 cone_center{2.0, 0.0, 0.0};
  double cone_radius = 1.0;

  bool is_null() const { return kind == ModelKind::null; }
  /// Upper exponent actually used: p for pure_power.
  double upper_exponent() const { return kind == ModelKind::two_power ? q : p; }
  double lower_bound_const() const;

  /// Throws std::invalid_argument naming the violated assumption.
  void validate() const;
  std::string tag() const;

  /// t-profiles: f = r g(t), F = r G(t), f' = r g'(t).
  double profile_f(double t) const;
  double profile_F(double t) const;
  double profile_fprime(double t) const;
};

std::string to_string(ModelKind kind);
std::string to_string(WeightForm form);

double f_value(const NonlinearModel& model, const Vec3& x, double t);
double f_prime(const NonlinearModel& model, const Vec3& x, double t);
double F_value(const NonlinearModel& model, const Vec3& x, double t);

/// Model bound to a grid with the weight tabulated at the grid points.
class GridNonlinearity {
public:
  GridNonlinearity(NonlinearModel model, const Grid& grid);

  const NonlinearModel& model() const { return model_; }
  const Grid& grid() const { return grid_; }
  bool is_null() const { return model_.is_null(); }
  double weight(std::size_t point) const { return weights_[point]; }

  struct Evaluation {
    double psi;
    SpinorField gradient;  // f(x, |u|) u
  };

  double psi(const SpinorField& u) const;
  SpinorField gradient(const SpinorField& u) const;
  Evaluation evaluate(const SpinorField& u) const;
  /// Pointwise f(x, |u(x)|).
  std::vector<double> coefficient(const SpinorField& u) const;

private:
  NonlinearModel model_;
  Grid grid_;
  std::vector<double> weights_;
};

double psi(const NonlinearModel& model, const SpinorField& u);
SpinorField psi_gradient(const NonlinearModel& model, const SpinorField& u);

struct GrowthCheck {
  std::string name;
  double worst_margin = 0.0;
  bool passed = true;
  Vec3 witness_x{0.0, 0.0, 0.0};
  double witness_t = 0.0;
  std::size_t samples = 0;
};

struct GrowthReport {
  std::vector<GrowthCheck> checks;
  bool all_passed() const;
  const GrowthCheck* find(const std::string& name) const;
};

/// Samples the structural inequalities of an admissible nonlinearity.
/// Margins are relative, (rhs - lhs) / scale for lhs <= rhs; a check passes
/// when its worst margin is >= -1e-13 (floating-point slack).
GrowthReport check_growth(const NonlinearModel& model, std::size_t sample_count,
                          std::uint64_t seed, double box_half_width = 8.0);

}  // namespace normdirac
