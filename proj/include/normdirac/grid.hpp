#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace normdirac {

using Vec3 = std::array<double, 3>;

/// Periodic cube [-L/2, L/2)^3 sampled with n points per axis.
///
/// Points are stored x-fastest: index = ix + n * (iy + n * iz). Fourier modes
/// use the same layout with FFT ordering, so mode i along an axis has
/// frequency (2*pi/L) * (i < n/2 ? i : i - n).
class Grid {
public:
  Grid(int n_per_axis, double box_length);

  int n_per_axis() const { return n_; }
  double box_length() const { return length_; }
  double spacing() const { return length_ / n_; }
  double cell_volume() const;
  double volume() const { return length_ * length_ * length_; }
  std::size_t points() const { return static_cast<std::size_t>(n_) * n_ * n_; }

  double coordinate(int i) const { return -0.5 * length_ + i * spacing(); }
  double frequency(int i) const;
  Vec3 position(std::size_t index) const;
  Vec3 wavevector(std::size_t index) const;
  std::array<int, 3> unravel(std::size_t index) const;
  std::size_t ravel(int ix, int iy, int iz) const;

  friend bool operator==(const Grid&, const Grid&) = default;

private:
  int n_;
  double length_;
};

inline double norm(const Vec3& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

}  // namespace normdirac
