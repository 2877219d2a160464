#include "normdirac/cli/config.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

namespace normdirac::cli {

namespace {

std::string locate(const std::string& source, int line) {
  return line > 0 ? fmt::format("{}:{}", source, line) : source;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw std::invalid_argument("expected a real number, got '" + s + "'");
  return v;
}

long long to_int(const std::string& s) {
  long long v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw std::invalid_argument("expected an integer, got '" + s + "'");
  return v;
}

std::vector<double> to_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& x : split_list(s)) out.push_back(to_double(x));
  return out;
}

std::vector<int> to_ints(const std::string& s) {
  std::vector<int> out;
  for (const auto& x : split_list(s)) out.push_back(static_cast<int>(to_int(x)));
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"grid.n_per_axis", [](RunConfig& c, const std::string& v) { c.n_per_axis = static_cast<int>(to_int(v)); }},
      {"grid.box_length", [](RunConfig& c, const std::string& v) { c.box_length = to_double(v); }},
      {"physics.mass", [](RunConfig& c, const std::string& v) { c.mass = to_double(v); }},
      {"model.kind",
       [](RunConfig& c, const std::string& v) {
         if (v == "pure_power") c.model.kind = ModelKind::pure_power;
         else if (v == "two_power") c.model.kind = ModelKind::two_power;
         else if (v == "null") c.model.kind = ModelKind::null;
         else throw std::invalid_argument("expected pure_power, two_power or null, got '" + v + "'");
       }},
      {"model.p", [](RunConfig& c, const std::string& v) { c.model.p = to_double(v); }},
      {"model.q", [](RunConfig& c, const std::string& v) { c.model.q = to_double(v); }},
      {"model.weight.amplitude", [](RunConfig& c, const std::string& v) { c.model.weight.amplitude = to_double(v); }},
      {"model.weight.decay_rate", [](RunConfig& c, const std::string& v) { c.model.weight.decay_rate = to_double(v); }},
      {"model.weight.form",
       [](RunConfig& c, const std::string& v) {
         if (v == "inverse_poly") c.model.weight.form = WeightForm::inverse_poly;
         else if (v == "bump") c.model.weight.form = WeightForm::bump;
         else throw std::invalid_argument("expected inverse_poly or bump, got '" + v + "'");
       }},
      {"model.growth_alpha", [](RunConfig& c, const std::string& v) { c.model.growth_alpha = to_double(v); }},
      {"model.tau", [](RunConfig& c, const std::string& v) { c.model.tau = to_double(v); }},
      {"model.lower_const", [](RunConfig& c, const std::string& v) { c.model.lower_const = to_double(v); }},
      {"model.t0", [](RunConfig& c, const std::string& v) { c.model.t0 = to_double(v); }},
      {"model.cone_center",
       [](RunConfig& c, const std::string& v) {
         const auto xs = to_doubles(v);
         if (xs.size() != 3) throw std::invalid_argument("expected three comma-separated reals");
         c.model.cone_center = {xs[0], xs[1], xs[2]};
       }},
      {"model.cone_radius", [](RunConfig& c, const std::string& v) { c.model.cone_radius = to_double(v); }},
      {"solver.tol_grad", [](RunConfig& c, const std::string& v) { c.solver.tol_grad = to_double(v); }},
      {"solver.tol_inner", [](RunConfig& c, const std::string& v) { c.solver.tol_inner = to_double(v); }},
      {"solver.max_outer", [](RunConfig& c, const std::string& v) { c.solver.max_outer = static_cast<int>(to_int(v)); }},
      {"solver.step_init", [](RunConfig& c, const std::string& v) { c.solver.step_init = to_double(v); }},
      {"solver.armijo_c", [](RunConfig& c, const std::string& v) { c.solver.armijo_c = to_double(v); }},
      {"solver.max_backtracks",
       [](RunConfig& c, const std::string& v) { c.solver.max_backtracks = static_cast<int>(to_int(v)); }},
      {"solver.a_max",
       [](RunConfig& c, const std::string& v) {
         if (v == "auto") {
           c.a_max_auto = true;
         } else {
           c.a_max_auto = false;
           c.solver.a_max = to_double(v);
         }
       }},
      {"solver.deflation_strength", [](RunConfig& c, const std::string& v) { c.solver.deflation_strength = to_double(v); }},
      {"solver.seed",
       [](RunConfig& c, const std::string& v) {
         const long long s = to_int(v);
         if (s < 0) throw std::invalid_argument("seed must be nonnegative");
         c.solver.seed = static_cast<std::uint64_t>(s);
       }},
      {"solver.a", [](RunConfig& c, const std::string& v) { c.a = to_double(v); }},
      {"sweep.a_values", [](RunConfig& c, const std::string& v) { c.a_values = to_doubles(v); }},
      {"multi.k", [](RunConfig& c, const std::string& v) { c.multi_k = static_cast<int>(to_int(v)); }},
      {"multi.random_starts", [](RunConfig& c, const std::string& v) { c.random_starts = static_cast<int>(to_int(v)); }},
      {"subspace.k_list", [](RunConfig& c, const std::string& v) { c.k_list = to_ints(v); }},
      {"subspace.n_ladder", [](RunConfig& c, const std::string& v) { c.n_ladder = to_ints(v); }},
      {"subspace.a",
       [](RunConfig& c, const std::string& v) {
         if (v == "none") c.subspace_a.reset();
         else c.subspace_a = to_double(v);
       }},
      {"subspace.box_per_scale", [](RunConfig& c, const std::string& v) { c.box_per_scale = to_double(v); }},
      {"subspace.samples_per_dim",
       [](RunConfig& c, const std::string& v) { c.samples_per_dim = static_cast<int>(to_int(v)); }},
      {"check.samples", [](RunConfig& c, const std::string& v) { c.check_samples = static_cast<int>(to_int(v)); }},
      {"output_dir", [](RunConfig& c, const std::string& v) { c.output_dir = v; }},
      {"format_version", [](RunConfig& c, const std::string& v) { c.format_version = static_cast<int>(to_int(v)); }},
  };
  return table;
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line_, const std::string& key_, const std::string& reason_)
    : std::runtime_error(fmt::format("{}: {}: {}", locate(source, line_), key_, reason_)),
      line(line_),
      key(key_),
      reason(reason_) {}

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig cfg;
  std::map<std::string, int> seen;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(source, line_no, line, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(source, line_no, key, "unknown key");
    if (seen.count(key)) throw ConfigError(source, line_no, key, fmt::format("duplicate key (first set on line {})", seen[key]));
    seen[key] = line_no;
    try {
      it->second(cfg, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(source, line_no, key, e.what());
    }
  }
  if (!seen.count("model.growth_alpha")) cfg.model.growth_alpha = cfg.model.p;
  if (!seen.count("model.q") && cfg.model.kind == ModelKind::pure_power) cfg.model.q = cfg.model.p;

  auto line_of = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys)
      if (seen.count(k)) return seen[k];
    return 0;
  };
  auto fail = [&](std::initializer_list<const char*> keys, const std::string& reason) {
    const char* key = *keys.begin();
    for (const char* k : keys)
      if (seen.count(k)) {
        key = k;
        break;
      }
    throw ConfigError(source, line_of(keys), key, reason);
  };

  if (cfg.n_per_axis < 2 || cfg.n_per_axis % 2 != 0)
    fail({"grid.n_per_axis"}, fmt::format("grid requires an even n_per_axis >= 2, got {}", cfg.n_per_axis));
  if (!(cfg.box_length > 0.0)) fail({"grid.box_length"}, "grid requires box_length > 0");
  if (!(cfg.mass > 0.0)) fail({"physics.mass"}, "the mass m must be positive (projectors need lambda >= m > 0)");

  const NonlinearModel& m = cfg.model;
  if (!m.is_null()) {
    if (!(m.p > 2.0 && m.p < 3.0)) fail({"model.p"}, fmt::format("(f₃) requires 2<p≤q<3, got p = {}", m.p));
    if (m.kind == ModelKind::two_power && !(m.q >= m.p && m.q < 3.0))
      fail({"model.q", "model.p"}, fmt::format("(f₃) requires 2<p≤q<3, got p = {}, q = {}", m.p, m.q));
    if (!(m.weight.amplitude > 0.0))
      fail({"model.weight.amplitude"}, "(f₂) requires f(x,t)>0: weight amplitude must be positive");
    if (!(m.weight.decay_rate > 0.0))
      fail({"model.weight.decay_rate"}, "(f₄) requires ess sup_{|x|≥R} r(x) → 0: decay_rate must be positive");
    if (!(m.growth_alpha > 0.0 && m.growth_alpha < 8.0 / 3.0))
      fail({"model.growth_alpha", "model.p"}, fmt::format("(f₅) requires α∈(0,8/3), got α = {}", m.growth_alpha));
    const double tau_max = (8.0 - 3.0 * m.growth_alpha) / 2.0;
    if (!(m.tau > 0.0 && m.tau < tau_max))
      fail({"model.tau", "model.growth_alpha", "model.p"},
           fmt::format("(f₅) requires τ∈(0,(8−3α)/2): τ = {} but (8−3α)/2 = {} at α = {}", m.tau, tau_max,
                       m.growth_alpha));
    if (m.lower_const && !(*m.lower_const > 0.0)) fail({"model.lower_const"}, "(f₅) requires L > 0");
    if (!(m.t0 > 0.0)) fail({"model.t0"}, "(f₅) requires t₀ > 0");
    if (!(m.cone_radius > 0.0 && m.cone_radius < norm(m.cone_center)))
      fail({"model.cone_radius", "model.cone_center"}, "(f₅) requires 0<d<|x₀| for the cone S");
    try {
      m.validate();
    } catch (const std::invalid_argument& e) {
      fail({"model.kind"}, e.what());
    }
  }

  try {
    cfg.solver.validate();
  } catch (const std::invalid_argument& e) {
    fail({"solver.tol_grad", "solver.tol_inner", "solver.max_outer", "solver.step_init", "solver.armijo_c",
          "solver.max_backtracks", "solver.a_max", "solver.deflation_strength"},
         e.what());
  }
  if (!(cfg.a > 0.0)) fail({"solver.a"}, "the L² radius a must be positive");
  for (double a : cfg.a_values)
    if (!(a > 0.0)) fail({"sweep.a_values"}, "sweep radii must be positive");
  for (std::size_t i = 1; i < cfg.a_values.size(); ++i)
    if (!(cfg.a_values[i] < cfg.a_values[i - 1])) fail({"sweep.a_values"}, "sweep radii must be strictly decreasing");
  if (cfg.multi_k < 1) fail({"multi.k"}, "multi.k must be at least 1");
  if (cfg.random_starts < 0) fail({"multi.random_starts"}, "multi.random_starts must be nonnegative");
  for (int k : cfg.k_list)
    if (k < 1 || k > 16) fail({"subspace.k_list"}, "subspace dimensions must lie in [1,16]");
  for (int n : cfg.n_ladder)
    if (n < 1) fail({"subspace.n_ladder"}, "subspace scales must be positive");
  if (cfg.subspace_a && !(*cfg.subspace_a > 0.0)) fail({"subspace.a"}, "subspace radius must be positive");
  if (!(cfg.box_per_scale > 0.0)) fail({"subspace.box_per_scale"}, "box_per_scale must be positive");
  if (cfg.samples_per_dim < 1) fail({"subspace.samples_per_dim"}, "samples_per_dim must be positive");
  if (cfg.check_samples < 1) fail({"check.samples"}, "check.samples must be positive");
  if (cfg.output_dir.empty()) fail({"output_dir"}, "output_dir must not be empty");
  if (cfg.format_version != 1) fail({"format_version"}, fmt::format("unsupported format_version {}", cfg.format_version));
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "--config", "cannot open file");
  return parse_config(in, path);
}

std::string render_config(const RunConfig& c) {
  auto list = [](const auto& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + fmt::format("{}", xs[i]);
    return s;
  };
  const NonlinearModel& m = c.model;
  std::string out;
  out += fmt::format("grid.n_per_axis = {}\n", c.n_per_axis);
  out += fmt::format("grid.box_length = {}\n", c.box_length);
  out += fmt::format("physics.mass = {}\n", c.mass);
  out += fmt::format("model.kind = {}\n", to_string(m.kind));
  out += fmt::format("model.p = {}\n", m.p);
  out += fmt::format("model.q = {}\n", m.q);
  out += fmt::format("model.weight.amplitude = {}\n", m.weight.amplitude);
  out += fmt::format("model.weight.decay_rate = {}\n", m.weight.decay_rate);
  out += fmt::format("model.weight.form = {}\n", to_string(m.weight.form));
  out += fmt::format("model.growth_alpha = {}\n", m.growth_alpha);
  out += fmt::format("model.tau = {}\n", m.tau);
  if (m.lower_const) out += fmt::format("model.lower_const = {}\n", *m.lower_const);
  out += fmt::format("model.t0 = {}\n", m.t0);
  out += fmt::format("model.cone_center = {},{},{}\n", m.cone_center[0], m.cone_center[1], m.cone_center[2]);
  out += fmt::format("model.cone_radius = {}\n", m.cone_radius);
  out += fmt::format("solver.tol_grad = {}\n", c.solver.tol_grad);
  out += fmt::format("solver.tol_inner = {}\n", c.solver.tol_inner);
  out += fmt::format("solver.max_outer = {}\n", c.solver.max_outer);
  out += fmt::format("solver.step_init = {}\n", c.solver.step_init);
  out += fmt::format("solver.armijo_c = {}\n", c.solver.armijo_c);
  out += fmt::format("solver.max_backtracks = {}\n", c.solver.max_backtracks);
  out += c.a_max_auto ? std::string("solver.a_max = auto\n") : fmt::format("solver.a_max = {}\n", c.solver.a_max);
  out += fmt::format("solver.deflation_strength = {}\n", c.solver.deflation_strength);
  out += fmt::format("solver.seed = {}\n", c.solver.seed);
  out += fmt::format("solver.a = {}\n", c.a);
  out += fmt::format("sweep.a_values = {}\n", list(c.a_values));
  out += fmt::format("multi.k = {}\n", c.multi_k);
  out += fmt::format("multi.random_starts = {}\n", c.random_starts);
  out += fmt::format("subspace.k_list = {}\n", list(c.k_list));
  out += fmt::format("subspace.n_ladder = {}\n", list(c.n_ladder));
  out += c.subspace_a ? fmt::format("subspace.a = {}\n", *c.subspace_a) : std::string("subspace.a = none\n");
  out += fmt::format("subspace.box_per_scale = {}\n", c.box_per_scale);
  out += fmt::format("subspace.samples_per_dim = {}\n", c.samples_per_dim);
  out += fmt::format("check.samples = {}\n", c.check_samples);
  out += fmt::format("output_dir = {}\n", c.output_dir);
  out += fmt::format("format_version = {}\n", c.format_version);
  return out;
}

}  // namespace normdirac::cli
