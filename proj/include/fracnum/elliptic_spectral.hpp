#pragma once

// Spectral fractional Poisson problem (-Laplacian)^alpha u = f on [a, b] with
// homogeneous Dirichlet data, using the Dirichlet sine eigenbasis:
// u_k = f_k / (k pi / L)^{2 alpha}.

#include <vector>

#include "fracnum/core_model.hpp"

namespace fracnum {

struct PoissonSolution {
  SampledFn u;
  std::vector<double> coefficients;  // sine coefficients of u, mode k at index k-1
  double residual;                   // |lambda^alpha u_k - f_k|_2 / |f_k|_2
};

/// alpha in (0, 1] (alpha = 1 is the classical problem); f must vanish at
/// both endpoints within 1e-8.
PoissonSolution solve_frac_poisson(const SampledFn& f, double alpha);

/// Spectral W^{2 alpha, 2} norm of the solution divided by the L2 norm of f.
double regularity_ratio(const SampledFn& f, double alpha);

/// Closed-form single-mode ratio (1 + (k pi / L)^2)^alpha / (k pi / L)^{2 alpha};
/// decreasing in k, so k = 1 bounds every input.
double mode_regularity_ratio(int k, double alpha, double length = 1.0);

}  // namespace fracnum
