#include <doctest.h>

#include <cmath>

#include "normdirac/nonlinearity.hpp"
#include "normdirac/random_fields.hpp"

using namespace normdirac;

namespace {

NonlinearModel two_power(double p, double q) {
  NonlinearModel m;
  m.kind = ModelKind::two_power;
  m.p = p;
  m.q = q;
  m.growth_alpha = p;
  return m;
}

bool message_contains(const NonlinearModel& m, const std::string& needle) {
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

}  // namespace

TEST_CASE("pure power closed forms at the origin") {
  const NonlinearModel m;  // p = 2.5, r0 = 1
  for (double t : {0.0, 0.1, 1.0, 3.7}) {
    CHECK(f_value(m, {0, 0, 0}, t) == doctest::Approx(std::sqrt(t)).epsilon(1e-15));
    CHECK(F_value(m, {0, 0, 0}, t) == doctest::Approx(std::pow(t, 2.5) / 2.5).epsilon(1e-15));
  }
  const Vec3 x{1.0, 2.0, -0.5};
  const double r = std::pow(1.0 + 5.25, -0.1);
  CHECK(m.weight(x) == doctest::Approx(r).epsilon(1e-15));
  CHECK_THROWS_AS(f_value(m, x, -1.0), std::domain_error);
}

TEST_CASE("pure power: f' t / f = p - 2 exactly") {
  const NonlinearModel m;
  Rng rng(3);
  std::uniform_real_distribution<double> u(1e-3, 10.0);
  for (int i = 0; i < 100; ++i) {
    const Vec3 x{u(rng) - 5, u(rng) - 5, u(rng) - 5};
    const double t = u(rng);
    CHECK(f_prime(m, x, t) * t / f_value(m, x, t) == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("antiderivative consistency: dF/dt = f t") {
  for (const NonlinearModel& m : {NonlinearModel{}, two_power(2.2, 2.8)}) {
    Rng rng(4);
    std::uniform_real_distribution<double> u(0.05, 5.0);
    for (int i = 0; i < 50; ++i) {
      const Vec3 x{u(rng), -u(rng), 0.3};
      const double t = u(rng), h = 1e-5 * t;
      const double fd = (F_value(m, x, t + h) - F_value(m, x, t - h)) / (2 * h);
      CHECK(fd == doctest::Approx(f_value(m, x, t) * t).epsilon(1e-7));
    }
  }
}

TEST_CASE("two power model: (p-2) f < f' t < (q-2) f strictly") {
  const NonlinearModel m = two_power(2.2, 2.8);
  for (double t : {1e-3, 0.1, 0.9, 1.0, 1.1, 10.0, 1e3}) {
    const Vec3 x{0.4, 0.0, 1.0};
    const double f = f_value(m, x, t), fp = f_prime(m, x, t);
    CHECK((m.p - 2) * f < fp * t);
    CHECK(fp * t < (m.q - 2) * f);
  }
}

TEST_CASE("growth report passes for both built-in models") {
  for (const NonlinearModel& m : {NonlinearModel{}, two_power(2.2, 2.8)}) {
    const GrowthReport rep = check_growth(m, 10000, 5);
    for (const auto& c : rep.checks) {
      INFO(c.name << " margin " << c.worst_margin);
      CHECK(c.passed);
      CHECK(c.samples > 0);
    }
    CHECK(rep.all_passed());
    REQUIRE(rep.find("(f5) cone lower bound") != nullptr);
    CHECK(rep.find("(f5) cone lower bound")->worst_margin >= 0.0);
  }
  const GrowthReport pure = check_growth(NonlinearModel{}, 10000, 6);
  REQUIRE(pure.find("(1.3) pure power equality") != nullptr);
  CHECK(pure.find("(1.3) pure power equality")->worst_margin >= -1e-13);
}

TEST_CASE("growth report flags a model with a wrong lower constant") {
  NonlinearModel m;
  m.lower_const = 10.0;
  const GrowthReport rep = check_growth(m, 2000, 7);
  const GrowthCheck* c = rep.find("(f5) cone lower bound");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->passed);
  CHECK(c->witness_t > 0.0);
  CHECK_FALSE(rep.all_passed());
}

TEST_CASE("default (f5) constant and the cone inequality") {
  const NonlinearModel m;
  CHECK(m.lower_bound_const() == doctest::Approx(1.0 / (2.5 * std::pow(2.0, 0.1))).epsilon(1e-15));
  // On the cone |x| >= 1, so (1+|x|^2)^{tau/2} <= (2|x|^2)^{tau/2}.
  Rng rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Vec3 x{2.0 + 0.5 * (u(rng) - 0.5), 0.5 * (u(rng) - 0.5), 0.5 * (u(rng) - 0.5)};
    const double t = u(rng);
    CHECK(F_value(m, x, t) >= m.lower_bound_const() * std::pow(norm(x), -m.tau) * std::pow(t, m.growth_alpha));
  }
}

TEST_CASE("weight tails decrease to zero") {
  for (WeightForm form : {WeightForm::inverse_poly, WeightForm::bump}) {
    WeightSpec w;
    w.form = form;
    double prev = w.tail_sup(0.0);
    CHECK(prev == doctest::Approx(1.0));
    for (double R = 1.0; R <= 1e6; R *= 4.0) {
      const double s = w.tail_sup(R);
      CHECK(s <= prev);
      prev = s;
    }
    CHECK(prev < 0.1);
  }
  WeightSpec bump;
  bump.form = WeightForm::bump;
  CHECK(bump({5.0, 0.0, 0.0}) == 0.0);
  CHECK(bump({4.9, 0.0, 0.0}) > 0.0);
}

TEST_CASE("validation cites the violated assumption") {
  NonlinearModel m;
  m.p = 3.5;
  CHECK(message_contains(m, "(f₃) requires 2<p≤q<3"));
  NonlinearModel q = two_power(2.4, 2.3);
  CHECK(message_contains(q, "(f₃) requires 2<p≤q<3"));
  NonlinearModel t;
  t.tau = 0.3;
  t.growth_alpha = 2.5;
  CHECK(message_contains(t, "0.25"));
  CHECK(message_contains(t, "(f₅)"));
  NonlinearModel amp;
  amp.weight.amplitude = 0.0;
  CHECK(message_contains(amp, "(f₂)"));
  NonlinearModel dec;
  dec.weight.decay_rate = 0.0;
  CHECK(message_contains(dec, "(f₄)"));
  NonlinearModel cone;
  cone.cone_radius = 3.0;
  CHECK(message_contains(cone, "(f₅)"));
  CHECK_NOTHROW(NonlinearModel{}.validate());
  NonlinearModel null;
  null.kind = ModelKind::null;
  null.p = 7.0;
  CHECK_NOTHROW(null.validate());
}

TEST_CASE("Psi: zero field, homogeneity, quadrature oracle") {
  const Grid g(8, 6.0);
  const NonlinearModel m;
  CHECK(psi(m, SpinorField(g)) == 0.0);
  Rng rng(9);
  const SpinorField u = random_field(g, rng, 1.0);
  CHECK(psi(m, 2.0 * u) == doctest::Approx(std::pow(2.0, 2.5) * psi(m, u)).epsilon(1e-12));

  double direct = 0.0;
  for (std::size_t p = 0; p < g.points(); ++p) {
    double t2 = 0.0;
    for (int c = 0; c < 4; ++c) t2 += std::norm(u(p, c));
    direct += F_value(m, g.position(p), std::sqrt(t2));
  }
  CHECK(psi(m, u) == doctest::Approx(direct * g.cell_volume()).epsilon(1e-12));

  NonlinearModel null;
  null.kind = ModelKind::null;
  CHECK(psi(null, u) == 0.0);
  CHECK(l2_norm(psi_gradient(null, u)) == 0.0);
}

TEST_CASE("Psi gradient matches directional finite differences") {
  const Grid g(8, 6.0);
  Rng rng(10);
  for (const NonlinearModel& m : {NonlinearModel{}, two_power(2.2, 2.8)}) {
    const SpinorField u = random_field(g, rng, 1.0), z = random_field(g, rng, 1.0);
    const double h = 1e-5;
    const double fd = (psi(m, u + h * z) - psi(m, u - h * z)) / (2 * h);
    CHECK(l2_inner(psi_gradient(m, u), z) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("Psi is midpoint convex") {
  const Grid g(8, 6.0);
  const NonlinearModel m = two_power(2.3, 2.9);
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const SpinorField u = random_field(g, rng, 1.0), v = random_field(g, rng, 1.0);
    CHECK(psi(m, 0.5 * (u + v)) <= 0.5 * (psi(m, u) + psi(m, v)));
  }
}

TEST_CASE("model tag names the parameters") {
  CHECK(NonlinearModel{}.tag() == "pure_power(p=2.5,r0=1,sigma=0.2,inverse_poly)");
  CHECK(two_power(2.2, 2.8).tag() == "two_power(p=2.2,q=2.8,r0=1,sigma=0.2,inverse_poly)");
}
