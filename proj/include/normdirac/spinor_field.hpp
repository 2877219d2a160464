#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "normdirac/dirac_symbol.hpp"
#include "normdirac/grid.hpp"

namespace normdirac {

struct PositionSpace {};
struct FourierSpace {};

/// Four complex components per grid point, interleaved, points x-fastest.
///
/// The tag keeps position samples and Fourier coefficients apart at compile
/// time. Fourier coefficients are normalized so that sum |c|^2 equals the
/// L^2 norm squared of the position field.
template <class Space>
class BasicField {
public:
  explicit BasicField(const Grid& grid) : grid_(grid), data_(4 * grid.points()) {}
  BasicField(const Grid& grid, std::vector<cplx> values) : grid_(grid), data_(std::move(values)) {
    if (data_.size() != 4 * grid.points())
      throw std::invalid_argument("field: value count does not match grid");
  }

  const Grid& grid() const { return grid_; }
  std::size_t points() const { return grid_.points(); }
  std::size_t size() const { return data_.size(); }

  cplx& operator()(std::size_t point, int comp) { return data_[4 * point + comp]; }
  const cplx& operator()(std::size_t point, int comp) const { return data_[4 * point + comp]; }
  cplx& operator[](std::size_t i) { return data_[i]; }
  const cplx& operator[](std::size_t i) const { return data_[i]; }

  Spinor spinor(std::size_t point) const {
    return {data_[4 * point], data_[4 * point + 1], data_[4 * point + 2], data_[4 * point + 3]};
  }
  void set_spinor(std::size_t point, const Spinor& s) {
    for (int c = 0; c < 4; ++c) data_[4 * point + c] = s[c];
  }

  std::span<cplx> values() { return data_; }
  std::span<const cplx> values() const { return data_; }

  BasicField& operator+=(const BasicField& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  BasicField& operator-=(const BasicField& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  BasicField& operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
  }
  BasicField& operator*=(double s) {
    for (auto& v : data_) v *= s;
    return *this;
  }
  /// this += s * o
  BasicField& axpy(double s, const BasicField& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * o.data_[i];
    return *this;
  }

  friend BasicField operator+(BasicField a, const BasicField& b) { return a += b; }
  friend BasicField operator-(BasicField a, const BasicField& b) { return a -= b; }
  friend BasicField operator*(double s, BasicField a) { return a *= s; }
  friend BasicField operator*(cplx s, BasicField a) { return a *= s; }

  friend bool operator==(const BasicField&, const BasicField&) = default;

private:
  void check_same(const BasicField& o) const {
    if (!(grid_ == o.grid_)) throw std::invalid_argument("field: grid mismatch");
  }

  Grid grid_;
  std::vector<cplx> data_;
};

using SpinorField = BasicField<PositionSpace>;
using Spectrum = BasicField<FourierSpace>;

/// Spectral splitting u = u+ + u-, stored as Fourier coefficients.
struct SpectralSplit {
  Spectrum plus;
  Spectrum minus;
};

/// Constant spinor field.
SpinorField constant_field(const Grid& grid, const Spinor& value);

/// Re sum a * conj(b) weighted by the cell volume.
double l2_inner(const SpinorField& u, const SpinorField& v);
double l2_norm(const SpinorField& u);
/// Re sum a * conj(b) over coefficients.
double l2_inner(const Spectrum& u, const Spectrum& v);
double l2_norm(const Spectrum& u);

}  // namespace normdirac
