#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "normdirac/solver.hpp"

namespace normdirac::cli {

/// Parse or validation failure; `line` is 0 when no single line is to blame.
class ConfigError : public std::runtime_error {
public:
  ConfigError(const std::string& source, int line, const std::string& key, const std::string& reason);
  int line;
  std::string key;
  std::string reason;
};

struct RunConfig {
  int n_per_axis = 24;
  double box_length = 16.0;
  double mass = 1.0;
  NonlinearModel model;
  SolverOptions solver;
  /// When set, a_max is found by bisection on the concavity certificate at startup.
  bool a_max_auto = true;
  double a = 0.1;
  std::vector<double> a_values{0.2, 0.14, 0.1, 0.07, 0.05};
  int multi_k = 2;
  int random_starts = 2;
  std::vector<int> k_list{1, 2, 3};
  std::vector<int> n_ladder{2, 4, 8, 16};
  std::optional<double> subspace_a = 0.1;
  double box_per_scale = 8.0;
  int samples_per_dim = 64;
  int check_samples = 10000;
  std::string output_dir = "out";
  int format_version = 1;

  Grid grid() const { return Grid(n_per_axis, box_length); }
};

/// Flat `key = value` lines; `#` starts a comment; unknown keys are errors.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

/// The text form of a configuration, one key per line, in canonical order.
std::string render_config(const RunConfig& cfg);

}  // namespace normdirac::cli
