#include "normdirac/nonlinearity.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "normdirac/detail/accumulate.hpp"

namespace normdirac {

double WeightSpec::operator()(const Vec3& x) const {
  const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  switch (form) {
    case WeightForm::inverse_poly:
      return decay_rate == 0.0 ? amplitude : amplitude * std::pow(1.0 + r2, -0.5 * decay_rate);
    case WeightForm::bump: {
      const double s = decay_rate * decay_rate * r2;
      if (s >= 1.0) return 0.0;
      return amplitude * std::exp(1.0 - 1.0 / (1.0 - s));
    }
  }
  return 0.0;
}

double WeightSpec::tail_sup(double radius) const { return (*this)({radius, 0.0, 0.0}); }

double NonlinearModel::lower_bound_const() const {
  if (lower_const) return *lower_const;
  return weight.amplitude / (p * std::pow(2.0, 0.5 * tau));
}

void NonlinearModel::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (kind == ModelKind::null) return;
  if (!(p > 2.0 && p < 3.0)) fail("(f₃) requires 2<p≤q<3 (p out of range)");
  if (kind == ModelKind::two_power && !(q >= p && q < 3.0))
    fail("(f₃) requires 2<p≤q<3 (q out of range)");
  if (!(weight.amplitude > 0.0)) fail("(f₂) requires r(x)>0: weight amplitude must be positive");
  if (!(weight.decay_rate > 0.0))
    fail("(f₄) requires ess sup_{|x|≥R} r → 0: weight decay_rate must be positive");
  if (!(growth_alpha > 0.0 && growth_alpha < 8.0 / 3.0)) fail("(f₅) requires α∈(0,8/3)");
  const double tau_max = (8.0 - 3.0 * growth_alpha) / 2.0;
  if (!(tau > 0.0 && tau < tau_max)) {
    std::ostringstream os;
    os << "(f₅) requires τ∈(0,(8−3α)/2): τ=" << tau << " but (8−3α)/2 = " << tau_max;
    fail(os.str());
  }
  if (!(lower_bound_const() > 0.0)) fail("(f₅) requires L>0");
  if (!(t0 > 0.0)) fail("(f₅) requires t₀>0");
  if (!(cone_radius > 0.0 && cone_radius < norm(cone_center)))
    fail("(f₅) requires 0<d<|x₀| for the cone S");
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::pure_power: return "pure_power";
    case ModelKind::two_power: return "two_power";
    case ModelKind::null: return "null";
  }
  return "unknown";
}

std::string to_string(WeightForm form) {
  return form == WeightForm::inverse_poly ? "inverse_poly" : "bump";
}

std::string NonlinearModel::tag() const {
  std::ostringstream os;
  os << to_string(kind);
  if (kind == ModelKind::null) return os.str();
  os << "(p=" << p;
  if (kind == ModelKind::two_power) os << ",q=" << q;
  os << ",r0=" << weight.amplitude << ",sigma=" << weight.decay_rate << ","
     << to_string(weight.form) << ")";
  return os.str();
}

double NonlinearModel::profile_f(double t) const {
  switch (kind) {
    case ModelKind::pure_power: return std::pow(t, p - 2.0);
    case ModelKind::two_power: return std::pow(t, p - 2.0) + std::pow(t, q - 2.0);
    case ModelKind::null: return 0.0;
  }
  return 0.0;
}

double NonlinearModel::profile_F(double t) const {
  switch (kind) {
    case ModelKind::pure_power: return std::pow(t, p) / p;
    case ModelKind::two_power: return std::pow(t, p) / p + std::pow(t, q) / q;
    case ModelKind::null: return 0.0;
  }
  return 0.0;
}

double NonlinearModel::profile_fprime(double t) const {
  switch (kind) {
    case ModelKind::pure_power: return (p - 2.0) * std::pow(t, p - 3.0);
    case ModelKind::two_power:
      return (p - 2.0) * std::pow(t, p - 3.0) + (q - 2.0) * std::pow(t, q - 3.0);
    case ModelKind::null: return 0.0;
  }
  return 0.0;
}

namespace {
void require_nonnegative(double t) {
  if (!(t >= 0.0)) throw std::domain_error("nonlinearity: t must be nonnegative");
}
}  // namespace

double f_value(const NonlinearModel& model, const Vec3& x, double t) {
  require_nonnegative(t);
  return model.is_null() ? 0.0 : model.weight(x) * model.profile_f(t);
}

double f_prime(const NonlinearModel& model, const Vec3& x, double t) {
  require_nonnegative(t);
  return model.is_null() ? 0.0 : model.weight(x) * model.profile_fprime(t);
}

double F_value(const NonlinearModel& model, const Vec3& x, double t) {
  require_nonnegative(t);
  return model.is_null() ? 0.0 : model.weight(x) * model.profile_F(t);
}

GridNonlinearity::GridNonlinearity(NonlinearModel model, const Grid& grid)
    : model_(std::move(model)), grid_(grid), weights_(grid.points(), 0.0) {
  if (!model_.is_null())
    for (std::size_t p = 0; p < grid.points(); ++p) weights_[p] = model_.weight(grid.position(p));
}

namespace {

// g(t) and G(t) from t^2, sharing the pow calls.
struct Profile {
  double g;
  double G;
};

inline Profile profile_from_sq(const NonlinearModel& m, double t2) {
  if (t2 == 0.0) return {0.0, 0.0};
  const double a = std::pow(t2, 0.5 * (m.p - 2.0));
  if (m.kind == ModelKind::pure_power) return {a, a * t2 / m.p};
  const double b = std::pow(t2, 0.5 * (m.q - 2.0));
  return {a + b, (a / m.p + b / m.q) * t2};
}

inline double abs_sq(const SpinorField& u, std::size_t p) {
  return std::norm(u(p, 0)) + std::norm(u(p, 1)) + std::norm(u(p, 2)) + std::norm(u(p, 3));
}

}  // namespace

double GridNonlinearity::psi(const SpinorField& u) const {
  if (is_null()) return 0.0;
  detail::Accumulator acc;
  for (std::size_t p = 0; p < grid_.points(); ++p)
    acc.add(weights_[p] * profile_from_sq(model_, abs_sq(u, p)).G);
  return acc.value() * grid_.cell_volume();
}

SpinorField GridNonlinearity::gradient(const SpinorField& u) const { return evaluate(u).gradient; }

GridNonlinearity::Evaluation GridNonlinearity::evaluate(const SpinorField& u) const {
  SpinorField grad(grid_);
  if (is_null()) return {0.0, std::move(grad)};
  detail::Accumulator acc;
  for (std::size_t p = 0; p < grid_.points(); ++p) {
    const Profile pr = profile_from_sq(model_, abs_sq(u, p));
    acc.add(weights_[p] * pr.G);
    const double f = weights_[p] * pr.g;
    for (int k = 0; k < 4; ++k) grad(p, k) = f * u(p, k);
  }
  return {acc.value() * grid_.cell_volume(), std::move(grad)};
}

std::vector<double> GridNonlinearity::coefficient(const SpinorField& u) const {
  std::vector<double> out(grid_.points(), 0.0);
  if (is_null()) return out;
  for (std::size_t p = 0; p < grid_.points(); ++p)
    out[p] = weights_[p] * profile_from_sq(model_, abs_sq(u, p)).g;
  return out;
}

double psi(const NonlinearModel& model, const SpinorField& u) {
  return GridNonlinearity(model, u.grid()).psi(u);
}

SpinorField psi_gradient(const NonlinearModel& model, const SpinorField& u) {
  return GridNonlinearity(model, u.grid()).gradient(u);
}

}  // namespace normdirac
