#pragma once

// Variable-order fractional derivatives on uniform grids.
//
// All singular integrals use product-trapezoid quadrature: the smooth factor
// is interpolated linearly on each cell and multiplied by the exact cell
// integral of the kernel |x - t|^{-alpha(x)}, so the kernel is never
// evaluated at its singularity. The order is frozen at the evaluation point.

#include <optional>
#include <vector>

#include "fracnum/core_model.hpp"

namespace fracnum {

enum class DerivKind { rl_classical, rl_truncated, caputo_left, caputo_right };

struct DerivVariant {
  DerivKind kind = DerivKind::rl_classical;
  double epsilon = 0.0;  // window length for rl_truncated

  static DerivVariant rl_classical() { return {DerivKind::rl_classical, 0.0}; }
  static DerivVariant rl_truncated(double epsilon) { return {DerivKind::rl_truncated, epsilon}; }
  static DerivVariant caputo_left() { return {DerivKind::caputo_left, 0.0}; }
  static DerivVariant caputo_right() { return {DerivKind::caputo_right, 0.0}; }

  bool is_rl() const { return kind == DerivKind::rl_classical || kind == DerivKind::rl_truncated; }
};

/// Derivative values plus the per-point flag marking evaluations whose
/// truncated-RL window was clipped at the left end of the domain.
struct DerivResult {
  SampledFn values;
  std::vector<bool> clipped;
};

struct ThetaWeight {
  double theta;
  double rl_mass;      // discrete L1 norm of the RL component
  double caputo_mass;  // discrete L1 norm of the right Caputo component
  SampledFn field;     // theta broadcast over the grid
};

struct HybridResult {
  SampledFn values;
  SampledFn rl;
  SampledFn caputo;
  double theta;
  std::vector<bool> clipped;
};

/// Left Caputo derivative with base point `a` (must be the grid's left end).
SampledFn caputo_left(const SampledFn& f, const OrderField& alpha, double a);

/// Riemann-Liouville derivative, classical (full memory from a) or truncated
/// to the window [x - epsilon, x]; requires epsilon >= 2 * spacing.
DerivResult rl_derivative(const SampledFn& f, const OrderField& alpha, const DerivVariant& variant);

/// Right Caputo derivative with the upper limit taken at the grid's right end.
SampledFn caputo_right(const SampledFn& f, const OrderField& alpha);

/// Global blend weight theta = m_RL / (m_RL + m_C); 1/2 when both vanish
/// (sum below `tie_tol`). Clipped truncated-RL points are left out of m_RL.
ThetaWeight theta_weight(const SampledFn& f, const OrderField& alpha, const DerivVariant& variant,
                         double tie_tol = 1e-12);

/// theta * RL + (1 - theta) * right Caputo. `theta_override` skips the
/// norm-based weight.
HybridResult adaptive_hybrid(const SampledFn& f, const OrderField& alpha,
                             const DerivVariant& variant,
                             std::optional<double> theta_override = std::nullopt);

/// Grunwald-Letnikov sum for a constant order in (0, 1]; independent of the
/// product-quadrature path above.
SampledFn gl_oracle(const SampledFn& f, double alpha, double a);

namespace detail {

/// Moments  M0 = int_lo^hi (m + t)^{-alpha} dt  and  M1 = int_lo^hi t (m + t)^{-alpha} dt
/// for 0 <= lo < hi <= 1. Series expansion for m >= 8 avoids cancellation.
struct CellMoments {
  double m0;
  double m1;
};
CellMoments cell_moments(std::size_t m, double lo, double hi, double alpha);

}  // namespace detail

}  // namespace fracnum
