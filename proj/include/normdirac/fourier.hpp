#pragma once

#include "normdirac/spinor_field.hpp"

namespace normdirac {

/// Unitary 3-D transforms of all four components.
///
/// forward uses exp(-i xi . x); the coefficients satisfy
/// sum |c|^2 = cell_volume * sum |u|^2, so -i d/dx_k acts as multiplication
/// by xi_k. The constant phase from the box offset is dropped: every
/// operator here is diagonal in xi, so it cancels.
Spectrum forward(const SpinorField& u);
SpinorField inverse(const Spectrum& c);

}  // namespace normdirac
