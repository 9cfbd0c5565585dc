#pragma once

#include <vector>

#include "fracnum/core_model.hpp"

namespace fracnum {

/// Orthonormal discrete sine transform on the interior nodes of a grid.
/// Mode k (1..n-2) has coefficient sqrt(2/L) h sum_i f_i sin(k pi i / (n-1)),
/// so sum_k c_k^2 equals the trapezoid L2 energy of f when f vanishes at both
/// ends. Returned vectors are indexed from 0 for mode 1.
std::vector<double> sine_coefficients(const SampledFn& f);

/// Inverse of sine_coefficients; endpoint values are zero.
SampledFn sine_synthesis(const Grid1D& grid, const std::vector<double>& coeffs);

}  // namespace fracnum
