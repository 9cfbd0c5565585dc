#pragma once

// Alpha-stable sampling (Chambers-Mallows-Stuck, S1 parameterization),
// one-sided stable subordinators and Monte Carlo estimates of the
// subordinated Hadamard kernel  E[(ln(1 + |z| + L_t))^{-alpha}].
//
// Monte Carlo work is split into fixed chunks; chunk c draws from the
// substream (seed, c), so results do not depend on the worker count.

#include <cstdint>
#include <span>
#include <vector>

#include "fracnum/rng.hpp"

namespace fracnum {

struct StableParams {
  double stability = 2.0;  // (0, 2]
  double skew = 0.0;       // [-1, 1]
  double scale = 1.0;      // > 0
  double location = 0.0;

  void validate() const;
};

struct SubordinatorPath {
  std::vector<double> times;
  std::vector<double> values;
};

struct KernelEstimate {
  double mean;
  double stderr_;
  long long n_samples;
};

/// One stable draw from `rng`.
double draw_stable(const StableParams& params, Rng& rng);

std::vector<double> sample_stable(const StableParams& params, long long n, std::uint64_t seed);

/// Increments dt^{1/gamma} S with S one-sided gamma-stable (skew 1, scale 1).
SubordinatorPath sample_subordinator(double gamma, double t_end, long long n_steps,
                                     std::uint64_t seed);

/// Subordinator value at time t, drawn directly through self-similarity.
double draw_subordinator_value(double gamma, double t, Rng& rng);

inline constexpr double kSubordinatorFloor = 1e-8;

/// Monte Carlo estimate over L_t (floored at 1e-8). alpha in [0, 1); at
/// alpha = 0 the integrand is identically 1. Common random numbers: for a
/// fixed (gamma, t, n_mc, seed) every z sees the same draws of L_t.
KernelEstimate hadamard_kernel(double z, double alpha, double gamma, double t, long long n_mc,
                               std::uint64_t seed);

/// Deterministic reading of the kernel formula: the integral of
/// (ln(1 + |z| + s))^{-alpha} s^{-1-gamma} over [1e-8, 1e3] (composite
/// Simpson in log s).
double hadamard_kernel_literal(double z, double alpha, double gamma, int intervals = 20000);

struct VarianceFit {
  double slope;
  double intercept;
  double target;  // 2 / alpha - 1
  std::vector<double> variances;
};

/// Least-squares slope of log Var[(ln(2 + L_t))^{-alpha}] against log t.
/// `alpha` is the kernel exponent and may exceed 1 here (exploratory use).
VarianceFit variance_scaling_fit(double alpha, double gamma, std::span<const double> t_grid,
                                 long long n_mc, std::uint64_t seed);

/// Same fit on externally supplied variances.
VarianceFit variance_scaling_fit_from(double alpha, std::span<const double> t_grid,
                                      std::span<const double> variances);

/// One-sample Kolmogorov-Smirnov statistic against Normal(mean, sd).
double ks_statistic_normal(std::span<const double> samples, double mean, double sd);

/// Asymptotic KS critical value at the 1% level.
double ks_critical_1pct(std::size_t n);

/// Hill estimate of the tail index from the largest `fraction` of |samples|.
double hill_tail_index(std::span<const double> samples, double fraction);

}  // namespace fracnum
