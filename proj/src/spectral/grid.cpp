#include "normdirac/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace normdirac {

Grid::Grid(int n_per_axis, double box_length) : n_(n_per_axis), length_(box_length) {
  if (n_per_axis < 2 || n_per_axis % 2 != 0)
    throw std::invalid_argument("grid: n_per_axis must be a positive even integer, got " +
                                std::to_string(n_per_axis));
  if (!(box_length > 0.0) || !std::isfinite(box_length))
    throw std::invalid_argument("grid: box_length must be positive and finite");
}

double Grid::cell_volume() const {
  const double h = spacing();
  return h * h * h;
}

double Grid::frequency(int i) const {
  const int k = i < n_ / 2 ? i : i - n_;
  return 2.0 * std::numbers::pi / length_ * k;
}

std::array<int, 3> Grid::unravel(std::size_t index) const {
  const auto n = static_cast<std::size_t>(n_);
  return {static_cast<int>(index % n), static_cast<int>((index / n) % n),
          static_cast<int>(index / (n * n))};
}

std::size_t Grid::ravel(int ix, int iy, int iz) const {
  const auto n = static_cast<std::size_t>(n_);
  return static_cast<std::size_t>(ix) + n * (static_cast<std::size_t>(iy) + n * iz);
}

Vec3 Grid::position(std::size_t index) const {
  const auto [ix, iy, iz] = unravel(index);
  return {coordinate(ix), coordinate(iy), coordinate(iz)};
}

Vec3 Grid::wavevector(std::size_t index) const {
  const auto [ix, iy, iz] = unravel(index);
  return {frequency(ix), frequency(iy), frequency(iz)};
}

}  // namespace normdirac
