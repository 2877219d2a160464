#pragma once

#include <complex>

namespace normdirac::detail {

// Extended-precision running sum. Energy differences between neighbouring
// descent iterates sit many orders below the energy itself.
class Accumulator {
public:
  void add(double x) { sum_ += static_cast<long double>(x); }
  double value() const { return static_cast<double>(sum_); }
  long double extended() const { return sum_; }

private:
  long double sum_ = 0.0L;
};

inline double re_dot(const std::complex<double>& a, const std::complex<double>& b) {
  return a.real() * b.real() + a.imag() * b.imag();
}

}  // namespace normdirac::detail
