#pragma once

#include <random>

#include "normdirac/dirac_operator.hpp"

namespace normdirac {

using Rng = std::mt19937_64;

/// Complex Gaussian coefficients with envelope exp(-|xi|^2 / (2 bandwidth^2)).
/// A nonpositive bandwidth gives white noise over all modes.
Spectrum random_spectrum(const Grid& grid, Rng& rng, double bandwidth);

SpinorField random_field(const Grid& grid, Rng& rng, double bandwidth);

/// Smooth random element of E+ (or E-) rescaled to the given L^2 norm.
Spectrum random_plus(const DiracOperator& op, Rng& rng, double bandwidth, double l2);
Spectrum random_minus(const DiracOperator& op, Rng& rng, double bandwidth, double l2);

/// Spinor times a normalized Gaussian envelope centred at `center`, plus-projected
/// and rescaled to L^2 norm `l2`.
Spectrum gaussian_plus(const DiracOperator& op, const Vec3& center, double width,
                       const Spinor& spinor, double l2);

}  // namespace normdirac
