#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "normdirac/nonlinearity.hpp"

namespace normdirac {

namespace {

constexpr double kSlack = -1e-13;

class Tracker {
public:
  explicit Tracker(std::string name) { check_.name = std::move(name); check_.worst_margin = std::numeric_limits<double>::infinity(); }

  // Records lhs <= rhs with a relative margin.
  void leq(double lhs, double rhs, const Vec3& x, double t) {
    const double scale = std::max({std::abs(lhs), std::abs(rhs), std::numeric_limits<double>::min()});
    record((rhs - lhs) / scale, x, t);
  }

  void record(double margin, const Vec3& x, double t) {
    ++check_.samples;
    if (margin < check_.worst_margin || std::isnan(margin)) {
      check_.worst_margin = margin;
      check_.witness_x = x;
      check_.witness_t = t;
    }
  }

  GrowthCheck finish() {
    check_.passed = check_.samples > 0 && check_.worst_margin >= kSlack;
    return check_;
  }

private:
  GrowthCheck check_;
};

struct Sampler {
  std::mt19937_64 rng;
  double half_width;

  Vec3 point() {
    std::uniform_real_distribution<double> u(-half_width, half_width);
    return {u(rng), u(rng), u(rng)};
  }
  double log_uniform(double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
  }
  Vec3 in_ball(const Vec3& c, double radius) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
      const Vec3 d{u(rng), u(rng), u(rng)};
      if (norm(d) <= 1.0) return {c[0] + radius * d[0], c[1] + radius * d[1], c[2] + radius * d[2]};
    }
  }
};

}  // namespace

bool GrowthReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const GrowthCheck& c) { return c.passed; });
}

const GrowthCheck* GrowthReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

GrowthReport check_growth(const NonlinearModel& model, std::size_t sample_count, std::uint64_t seed,
                          double box_half_width) {
  if (model.is_null()) throw std::invalid_argument("check_growth: null model has no growth structure");
  if (sample_count == 0) throw std::invalid_argument("check_growth: sample_count must be positive");

  const double p = model.p;
  const double q = model.upper_exponent();
  const double r0 = model.weight.amplitude;
  Sampler s{std::mt19937_64(seed), box_half_width};
  GrowthReport report;

  {
    Tracker zero("(f1) f(x,0)=0");
    Tracker anti("(f1) F_t = f t");
    for (std::size_t i = 0; i < sample_count; ++i) {
      const Vec3 x = s.point();
      zero.record(-std::abs(f_value(model, x, 0.0)) - std::abs(F_value(model, x, 0.0)), x, 0.0);
      const double t = s.log_uniform(1e-2, 1e2);
      const double h = 1e-5 * t;
      const double dF = (F_value(model, x, t + h) - F_value(model, x, t - h)) / (2.0 * h);
      const double ft = f_value(model, x, t) * t;
      const double rel = std::abs(dF - ft) / std::max(std::abs(ft), std::numeric_limits<double>::min());
      anti.record((1e-7 - rel) / 1e-7, x, t);
    }
    report.checks.push_back(zero.finish());
    report.checks.push_back(anti.finish());
  }

  {
    Tracker pos("(f2) f>0");
    for (std::size_t i = 0; i < sample_count; ++i) {
      const Vec3 x = s.point();
      const double t = s.log_uniform(1e-3, 1e3);
      const double f = f_value(model, x, t);
      pos.record(f > 0.0 ? 0.0 : -1.0, x, t);
    }
    report.checks.push_back(pos.finish());
  }

  {
    // Monotonicity on a log-spaced ladder.
    Tracker up("(f3) f/t^(p-2) nondecreasing");
    Tracker down("(f3) f/t^(q-2) nonincreasing");
    const std::size_t rungs = 64;
    const std::size_t points = std::max<std::size_t>(1, sample_count / rungs);
    for (std::size_t i = 0; i < points; ++i) {
      const Vec3 x = s.point();
      double prev_up = 0.0, prev_down = 0.0;
      for (std::size_t j = 0; j < rungs; ++j) {
        const double t = std::pow(10.0, -3.0 + 6.0 * static_cast<double>(j) / (rungs - 1));
        const double f = f_value(model, x, t);
        const double a = f / std::pow(t, p - 2.0);
        const double b = f / std::pow(t, q - 2.0);
        if (j > 0) {
          up.leq(prev_up, a, x, t);
          down.leq(b, prev_down, x, t);
        }
        prev_up = a;
        prev_down = b;
      }
    }
    report.checks.push_back(up.finish());
    report.checks.push_back(down.finish());
  }

  {
    Tracker tail("(f4) tail sup r -> 0");
    double prev = model.weight.tail_sup(0.0);
    for (int j = 0; j <= 30; ++j) {
      const double R = std::pow(10.0, j);
      const double cur = model.weight.tail_sup(R);
      tail.record((prev - cur) / r0, {R, 0.0, 0.0}, 1.0);
      prev = cur;
    }
    tail.record((1e-3 * r0 - prev) / r0, {1e30, 0.0, 0.0}, 1.0);
    report.checks.push_back(tail.finish());
  }

  {
    Tracker lo("(1.2) (p-2)f <= f't");
    Tracker hi("(1.2) f't <= (q-2)f");
    Tracker plo("(1.2) f t^2/q <= F");
    Tracker phi("(1.2) F <= f t^2/p");
    for (std::size_t i = 0; i < sample_count; ++i) {
      const Vec3 x = s.point();
      const double t = s.log_uniform(1e-3, 1e3);
      const double f = f_value(model, x, t);
      const double fpt = f_prime(model, x, t) * t;
      const double F = F_value(model, x, t);
      lo.leq((p - 2.0) * f, fpt, x, t);
      hi.leq(fpt, (q - 2.0) * f, x, t);
      plo.leq(f * t * t / q, F, x, t);
      phi.leq(F, f * t * t / p, x, t);
    }
    for (Tracker* tr : {&lo, &hi, &plo, &phi}) report.checks.push_back(tr->finish());
  }

  {
    Tracker up_lo("(1.3) s>=1 lower");
    Tracker up_hi("(1.3) s>=1 upper");
    Tracker dn_lo("(1.3) s<=1 lower");
    Tracker dn_hi("(1.3) s<=1 upper");
    Tracker eq("(1.3) pure power equality");
    const bool pure = model.kind == ModelKind::pure_power;
    for (std::size_t i = 0; i < sample_count; ++i) {
      const Vec3 x = s.point();
      const double t = s.log_uniform(1e-3, 1e2);
      const double sc = s.log_uniform(1e-2, 1e2);
      const double F = F_value(model, x, t);
      const double Fs = F_value(model, x, sc * t);
      const double sp = std::pow(sc, p) * F;
      const double sq = std::pow(sc, q) * F;
      if (sc >= 1.0) {
        up_lo.leq(sp, Fs, x, t);
        up_hi.leq(Fs, sq, x, t);
      } else {
        dn_lo.leq(sq, Fs, x, t);
        dn_hi.leq(Fs, sp, x, t);
      }
      if (pure) eq.record(-std::abs(Fs - sp) / Fs, x, t);
    }
    for (Tracker* tr : {&up_lo, &up_hi, &dn_lo, &dn_hi}) report.checks.push_back(tr->finish());
    if (pure) report.checks.push_back(eq.finish());
  }

  {
    // F(x,s)/s^p increases and F(x,s)/s^q decreases, anchored at s = 1.
    Tracker up_lo("(1.4) s>=1 lower");
    Tracker up_hi("(1.4) s>=1 upper");
    Tracker dn_lo("(1.4) s<=1 lower");
    Tracker dn_hi("(1.4) s<=1 upper");
    for (std::size_t i = 0; i < sample_count; ++i) {
      const Vec3 x = s.point();
      const double F1 = F_value(model, x, 1.0);
      const double sc = s.log_uniform(1e-3, 1e3);
      const double F = F_value(model, x, sc);
      if (sc >= 1.0) {
        up_lo.leq(F1 * std::pow(sc, p), F, x, sc);
        up_hi.leq(F, F1 * std::pow(sc, q), x, sc);
      } else {
        dn_lo.leq(F1 * std::pow(sc, q), F, x, sc);
        dn_hi.leq(F, F1 * std::pow(sc, p), x, sc);
      }
    }
    for (Tracker* tr : {&up_lo, &up_hi, &dn_lo, &dn_hi}) report.checks.push_back(tr->finish());
  }

  {
    Tracker bound("(1.5) F <= C(t^p+t^q)");
    Tracker convex("(1.5) F convex");
    const double C = r0 / p;
    for (std::size_t i = 0; i < sample_count; ++i) {
      const Vec3 x = s.point();
      const double t = s.log_uniform(1e-3, 1e3);
      bound.leq(F_value(model, x, t), C * (std::pow(t, p) + std::pow(t, q)), x, t);
      const double t2 = s.log_uniform(1e-3, 1e3);
      convex.leq(F_value(model, x, 0.5 * (t + t2)), 0.5 * (F_value(model, x, t) + F_value(model, x, t2)), x, t);
    }
    report.checks.push_back(bound.finish());
    report.checks.push_back(convex.finish());
  }

  {
    Tracker cone("(f5) cone lower bound");
    const double L = model.lower_bound_const();
    for (std::size_t i = 0; i < sample_count; ++i) {
      const Vec3 y = s.in_ball(model.cone_center, model.cone_radius);
      const double ny = norm(y);
      const double smax = std::max(1.0, std::sqrt(3.0) * box_half_width / ny);
      const double sc = smax > 1.0 ? s.log_uniform(1.0, smax) : 1.0;
      const Vec3 x{sc * y[0], sc * y[1], sc * y[2]};
      const double t = s.log_uniform(1e-6 * model.t0, model.t0);
      const double lhs = L * std::pow(norm(x), -model.tau) * std::pow(t, model.growth_alpha);
      cone.leq(lhs, F_value(model, x, t), x, t);
    }
    report.checks.push_back(cone.finish());
  }

  return report;
}

}  // namespace normdirac
