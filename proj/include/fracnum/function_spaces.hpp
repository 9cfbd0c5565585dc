#pragma once

// Discrete estimators for fractional norms on uniform grids. Integrals use
// trapezoid weights; suprema run over grid points (or grid-multiple shifts),
// so every estimate is a lower bound of its continuous counterpart.

#include <string_view>

#include "fracnum/core_model.hpp"

namespace fracnum {

enum class NormKind { gagliardo, besov, holder, sobolev_spectral, penalty };

std::string_view to_string(NormKind kind);
NormKind parse_norm_kind(std::string_view name);

struct NormReport {
  double value;
  std::size_t grid_n;
  NormKind kind;
};

/// (sum_{i != j} |f_i - f_j|^p / |x_i - x_j|^{1 + s p} w_i w_j)^{1/p}. O(n^2).
NormReport gagliardo_seminorm(const SampledFn& f, double s, double p);

/// sup over shifts h = k * spacing of h^{-alpha} (sum |f(x_i + h) - f(x_i)|^p w_i)^{1/p},
/// with w the trapezoid weights of the shifted sub-grid.
double besov_increment(const SampledFn& f, double alpha, double p);

/// besov_increment + L^p norm.
NormReport besov_norm(const SampledFn& f, double alpha, double p);

/// max over grid pairs of |f_i - f_j| / |x_i - x_j|^alpha. O(n^2).
NormReport holder_seminorm(const SampledFn& f, double alpha);

/// Both sides of the Hoelder interpolation inequality for d = f - g:
///   lhs = |d|_inf + [d]_{alpha - eps}
///   rhs = |d|_inf^{1 - theta} (|d|_inf + [d]_alpha)^theta,  theta = (alpha - eps) / alpha.
/// Without a constant the inequality can fail; the sharp pointwise bound
/// [d]_{theta alpha} <= (2 |d|_inf)^{1 - theta} [d]_alpha^theta gives
/// lhs <= (1 + 2^{1 - theta}) rhs, exposed as sharp_constant().
struct InterpolationGap {
  double lhs;
  double rhs;
  double theta;

  bool holds() const { return lhs <= rhs * (1.0 + 1e-9) + 1e-12; }
  double sharp_constant() const;
  bool holds_sharp() const { return lhs <= sharp_constant() * rhs * (1.0 + 1e-9) + 1e-12; }
};

InterpolationGap holder_interpolation_gap(const SampledFn& f, const SampledFn& g, double alpha,
                                          double eps);

/// Critical Sobolev exponent q = d p / (d - s p); requires s p < d.
double sobolev_embedding_q(int d, double s, double p);

/// Trapezoid quadrature of |alpha'(x)|^2 / alpha(x)^{5/2}.
NormReport anisotropic_penalty(const OrderField& alpha);

/// Bessel-potential norm (sum_k (1 + (k pi / L)^2)^s c_k^2)^{1/2} over sine
/// coefficients; f must vanish at both ends (|f| <= 1e-8).
NormReport sobolev_norm_spectral(const SampledFn& f, double s);

}  // namespace fracnum
