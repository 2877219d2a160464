#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "normdirac/reduction.hpp"

namespace normdirac::cli {

/// One verified property. margin >= 0 means the property holds; its scale
/// depends on the check (usually tolerance minus observed error).
struct CheckItem {
  std::string suite;
  std::string name;
  double margin = 0.0;
  bool passed = false;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckItem> items;
  bool all_passed() const;
  void append(std::vector<CheckItem> more);
};

/// Projector and symbol identities at random lattice frequencies of `grid`.
std::vector<CheckItem> check_projector_algebra(const Grid& grid, double mass, std::size_t samples,
                                               std::uint64_t seed);

/// Split orthogonality, transform round trip and m ||u||_{L^2}^2 <= ||u||^2
/// over random fields, with equality on the zero mode.
std::vector<CheckItem> check_field_norms(const DiracOperator& op, int fields, std::uint64_t seed);

/// Every inequality of check_growth, plus midpoint convexity of Psi on the grid.
std::vector<CheckItem> check_growth_suite(const NonlinearModel& model, const Grid& grid, std::size_t samples,
                                          std::uint64_t seed);

/// Second differences of I o h in w, the boundary gap, and agreement of
/// inner maximizers from several starts, all at radius a.
std::vector<CheckItem> check_concavity(const Reduction& red, double a, int trials, std::uint64_t seed);

/// Reduced gradient against sphere-path finite differences, the null-model
/// closed form, and the minus-space stationarity battery.
std::vector<CheckItem> check_gradient(const Reduction& red, double a, int trials, std::uint64_t seed);

}  // namespace normdirac::cli
