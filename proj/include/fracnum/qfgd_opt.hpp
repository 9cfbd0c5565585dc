#pragma once

// Fractional gradient descent with additive alpha-stable noise, plus the
// plain and fixed-order baselines.
//
// The fractional gradient uses the one-term Caputo model per coordinate:
//   g_i = dL/dw_i * |w_i - c_i|^{1 - alpha} / Gamma(2 - alpha)
// with reference point c. The update is
//   w' = w - eta g + sqrt(2 eta T) xi,  xi_i ~ stable(noise_index, skew),
// and the total step is norm-clipped at step_clip.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "fracnum/rng.hpp"

namespace fracnum {

enum class LossKind { quadratic, rosenbrock, multiscale_ripple };

LossKind parse_loss_kind(std::string_view name);
std::string_view to_string(LossKind kind);

/// quadratic:          0.5 * curvature * |w - center|^2
/// rosenbrock:         sum_i 100 (w_{i+1} - w_i^2)^2 + (1 - w_i)^2, minimum at 1
/// multiscale_ripple:  quadratic + sum_m a_m sum_i (1 - cos(omega_m (w_i - center_i)))
///                     with sum_m a_m omega_m^2 < curvature so the center stays the
///                     unique minimizer.
struct LossSpec {
  LossKind kind = LossKind::quadratic;
  std::size_t dim = 1;
  std::vector<double> center;  // empty means the origin
  double curvature = 1.0;
  std::vector<double> amplitudes;
  std::vector<double> frequencies;

  void validate() const;
  double value(const std::vector<double>& w) const;
  std::vector<double> gradient(const std::vector<double>& w) const;
  /// Known global minimizer.
  std::vector<double> minimizer() const;
};

struct OptConfig {
  double eta = 0.1;
  double temperature = 0.0;
  double alpha_order = 1.0;
  std::optional<double> noise_index;  // defaults to alpha_order
  double stable_skew = 0.0;
  std::vector<double> ref_point;      // empty means the initial iterate
  int max_iter = 100;
  double grad_tol = 1e-10;
  std::uint64_t seed = 42;
  std::optional<double> step_clip;    // defaults to 10 * eta * |grad L(w0)|

  // Optional per-coordinate order adaptation: while the sign of dL/dw_i is
  // unchanged the order of coordinate i steps down by order_step (not below
  // order_min) whenever that enlarges the Caputo factor; a sign change resets
  // it to alpha_order.
  bool adaptive_order = false;
  double order_min = 0.3;
  double order_step = 0.15;

  void validate() const;
  double effective_noise_index() const { return noise_index.value_or(alpha_order); }
};

struct OptRecord {
  std::vector<double> w;
  double loss;
  double grad_norm;
  double error;  // |w - w*|
};

struct OptTrace {
  std::vector<OptRecord> records;
  bool converged = false;
};

/// Per-coordinate fractional gradient with a constant order in (0, 1].
std::vector<double> frac_gradient(const LossSpec& loss, const std::vector<double>& w,
                                  double alpha_order, const std::vector<double>& c);

/// Same with a per-coordinate order.
std::vector<double> frac_gradient(const LossSpec& loss, const std::vector<double>& w,
                                  const std::vector<double>& orders, const std::vector<double>& c);

/// Mutable optimizer state carried between steps.
struct StepState {
  explicit StepState(std::uint64_t seed) : rng(seed) {}
  Rng rng;
  std::vector<double> orders;     // per-coordinate order (adaptive mode)
  std::vector<int> last_sign;
};

/// One update from w. `ref` is the resolved reference point, `clip` the
/// resolved step clip.
std::vector<double> qfgd_step(const std::vector<double>& w, const LossSpec& loss,
                              const OptConfig& cfg, const std::vector<double>& ref, double clip,
                              StepState& state);

OptTrace run_qfgd(const LossSpec& loss, const std::vector<double>& w0, const OptConfig& cfg);

struct Baselines {
  OptTrace gd;
  OptTrace fno_like;
};

/// gd: order 1, T = 0. fno_like: cfg.alpha_order, T = 0, no order adaptation.
Baselines run_baselines(const LossSpec& loss, const std::vector<double>& w0, const OptConfig& cfg);

}  // namespace fracnum
