#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "normdirac/dirac_operator.hpp"
#include "normdirac/nonlinearity.hpp"
#include "normdirac/random_fields.hpp"

namespace normdirac {

struct InnerOptions {
  /// Absolute E-norm tolerance on the inner gradient; nonpositive means 1e-9 * a.
  double tol = 0.0;
  int max_iter = 500;
};

struct InnerCertificate {
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  /// ||w||_E divided by the ball radius sqrt(m) a / 2.
  double ball_fraction = 0.0;
  bool interior = true;
};

struct InnerResult {
  Spectrum w;
  InnerCertificate certificate;
};

class InnerSolveError : public std::runtime_error {
public:
  InnerSolveError(const std::string& what, InnerCertificate cert)
      : std::runtime_error(what), certificate(cert) {}
  InnerCertificate certificate;
};

/// A sphere point v with everything the outer solver needs.
struct ReducedState {
  Spectrum v;
  double a = 0.0;
  Spectrum w;
  /// G(v) = h(v, w(v)) in position space.
  SpinorField g;
  double kappa_val = 0.0;
  double j_val = 0.0;
  /// J(v) - m a^2 / 2, computed without cancellation.
  double j_shift = 0.0;
  Spectrum grad_tangent;
  double grad_norm = 0.0;
  double inner_residual = 0.0;
  int inner_iterations = 0;
};

/// Lyapunov-Schmidt reduction of I(u) = 1/2 ||u+||^2 - 1/2 ||u-||^2 - Psi(u)
/// onto plus-fields of prescribed L^2 norm.
///
/// Plus-fields v and minus-fields w are carried as spectra; a always means
/// ||v||_{L^2}.
class Reduction {
public:
  Reduction(const DiracOperator& op, const NonlinearModel& model);

  const DiracOperator& op() const { return op_; }
  const GridNonlinearity& nonlinearity() const { return nl_; }
  const NonlinearModel& model() const { return nl_.model(); }
  double mass() const { return op_.mass(); }

  /// ||v||_E^2 < (m + 1) ||v||_{L^2}^2.
  bool in_v_set(const Spectrum& v) const;
  /// sqrt(m) a / 2.
  double ball_radius(double a) const;

  /// h(v, w) = sqrt(a^2 - ||w||^2) v / a + w with a = ||v||_{L^2}.
  Spectrum h_map_spectrum(const Spectrum& v, const Spectrum& w) const;
  SpinorField h_map(const Spectrum& v, const Spectrum& w) const;

  double energy(const SpinorField& u) const;

  /// (I o h)(v, w) - 1/2 ||v||_E^2. Smooth in w and free of the large
  /// constant, so second differences stay accurate.
  double inner_objective(const Spectrum& v, const Spectrum& w) const;

  /// E-Riesz representative in E- of w -> d(I o h)/dw.
  Spectrum inner_gradient(const Spectrum& v, const Spectrum& w) const;

  InnerResult inner_maximize(const Spectrum& v, const InnerOptions& opts,
                             const Spectrum* w_start = nullptr) const;

  /// Second difference of (I o h)(v, w + e z) at step eps, divided by ||z||_E^2.
  double concavity_ratio(const Spectrum& v, const Spectrum& w, const Spectrum& z, double eps) const;

  /// min over the sampled boundary directions of (I o h)(v, 0) - (I o h)(v, w)
  /// with ||w||_E equal to the ball radius.
  double boundary_gap(const Spectrum& v, Rng& rng, int directions) const;

  SpinorField reduce(const Spectrum& v, const InnerOptions& opts) const;

  double kappa(const SpinorField& u) const;
  SpinorField pde_residual(const SpinorField& u) const;
  /// ||H u||_{L^2} / ||H0 u||_{L^2}.
  double relative_residual(const SpinorField& u) const;

  /// Full reduced state at v; a is taken as ||v||_{L^2}.
  ReducedState evaluate(const Spectrum& v, const InnerOptions& opts,
                        const Spectrum* w_start = nullptr) const;
  double reduced_value(const Spectrum& v, const InnerOptions& opts) const;
  Spectrum reduced_gradient(const Spectrum& v, const InnerOptions& opts) const;

  /// E-orthogonal projection of a plus-field onto T_v = {z : Re(v, z)_{L^2} = 0}.
  Spectrum tangent_project(const Spectrum& v, const Spectrum& z) const;

  /// Re(H G, z)_{L^2} / ||z||_E over 32 random minus-fields and the 8
  /// lowest-frequency minus-modes; returns the largest absolute value.
  double stationarity_battery(const SpinorField& g, Rng& rng) const;
  /// |Re(H G, v)_{L^2}| / (||H0 G||_{L^2} ||v||_{L^2}).
  double multiplier_identity(const SpinorField& g, const Spectrum& v) const;

private:
  struct HEval {
    double w_l2sq;
    double s;
    Spectrum h;
    double psi;
    Spectrum fh;  // transform of f(x,|h|) h
  };
  struct InnerStep {
    HEval e;
    double c;  // kappa(h)
    Spectrum grad;
    double grad_norm;
  };
  HEval eval_h(const Spectrum& v, double a, const Spectrum& w) const;
  InnerStep inner_step(const Spectrum& v, double a, double v_e2, const Spectrum& w) const;
  void check_domain(const Spectrum& v, double a, const Spectrum& w) const;
  Spectrum residual_spectrum(const Spectrum& u_hat, double* kappa_out) const;

  DiracOperator op_;
  GridNonlinearity nl_;
};

/// Lowest-frequency unit minus-modes (plane waves), sorted by |xi|.
std::vector<Spectrum> lowest_minus_modes(const DiracOperator& op, std::size_t count);

struct AMaxOptions {
  double lo = 1e-3;
  double hi = 4.0;
  int bisections = 16;
  int samples = 3;
  int directions = 4;
  std::uint64_t seed = 7;
};

/// Largest a in [lo, hi] at which the sampled concavity certificate holds:
/// inner maximization converges in the interior and second differences of
/// I o h stay below -1/8 ||z||_E^2.
double estimate_a_max(const Reduction& red, const Vec3& center, const AMaxOptions& opts = {});

}  // namespace normdirac
