#pragma once

// Haar multiresolution analysis with order-adaptive thresholds, the
// approximation bound evaluators, the order-driven domain partition and a
// pointwise regularity estimator.

#include <string>
#include <utility>
#include <vector>

#include "fracnum/core_model.hpp"

namespace fracnum {

/// Orthonormal Haar coefficients of a function sampled on 2^J points. Level j
/// (0..J-1) holds 2^j details; coefficients carry a sqrt(spacing) factor so
/// that the coefficient energy equals sum f_i^2 * spacing.
struct WaveletCoeffs {
  int levels = 0;
  double scaling_coeff = 0.0;
  std::vector<std::vector<double>> detail;
  Grid1D grid{0.0, 1.0, 2};

  std::size_t total() const { return std::size_t{1} << levels; }
  double energy() const;
};

WaveletCoeffs haar_decompose(const SampledFn& f);
SampledFn haar_reconstruct(const WaveletCoeffs& c);

/// Per-coefficient thresholds. For the detail (j, k), beta is the minimum of
/// alpha over its support, N = ceil(1 / (2 beta)) and tau = 2^{-j beta N}.
/// The per-level arrays hold the level minimum of beta and its N and tau.
struct ThresholdPlan {
  int levels = 0;
  double eps = 0.0;
  std::vector<double> beta_j;
  std::vector<int> N_j;
  std::vector<double> eps_j;
  std::vector<double> tau_j;
  std::vector<std::vector<double>> beta;
  std::vector<std::vector<int>> N;
  std::vector<std::vector<double>> tau;

  /// Copy with every threshold multiplied by `factor`.
  ThresholdPlan scaled(double factor) const;
  /// Copy with every threshold set to zero.
  ThresholdPlan zeroed() const { return scaled(0.0); }
};

ThresholdPlan threshold_plan(const OrderField& alpha, double eps);

struct ApproxResult {
  SampledFn approx;
  std::size_t retained;  // kept details plus the scaling coefficient
  double discarded_error;  // sqrt of the discarded coefficient energy
  double measured_error;   // sqrt(spacing * sum (f - approx)^2)
};

/// Zeroes every detail with |c_jk| < tau_jk and reconstructs.
ApproxResult adaptive_approx(const SampledFn& f, const ThresholdPlan& plan);

/// sum_{j=1..J} 2^{-j beta_j (2 N_j - eps_j)} + anisotropic penalty of alpha.
double error_bound_multilevel(const ThresholdPlan& plan, const OrderField& alpha);

/// n^{-beta (2N - eps)} + anisotropic penalty of alpha.
double error_bound_uniform(long long n, double beta, int N, double eps, const OrderField& alpha);

/// Greedy left-to-right cover of [a, b]. At the current left edge x the target
/// width is w = n^{-beta / alpha(x)}; the remaining length r is split into
/// k = max(1, round(r / w)) equal parts and the first part becomes the next
/// cell, so constant alpha yields an exactly uniform partition.
std::vector<std::pair<double, double>> partition_domain(const OrderField& alpha, long long n,
                                                        double beta);

/// Pointwise log-log slope of the oscillation max - min over [x - r, x + r]
/// against r for dyadic radii r = 1, 2, 4, ... <= window (in grid steps),
/// clipped to [0.05, 0.95]. Zero oscillation at any radius counts as smooth.
OrderField local_order_estimate(const SampledFn& f, int window);

inline constexpr double kOrderClipLow = 0.05;
inline constexpr double kOrderClipHigh = 0.95;

/// Test-function catalog used for fitted-constant checks: synthetic functions
/// paired with their nominal pointwise regularity.
struct CatalogEntry {
  std::string label;
  CatalogId id;
  ParamMap params;
  double order_left;   // nominal order at a
  double order_right;  // nominal order at b
};

std::vector<CatalogEntry> reference_catalog();
SampledFn catalog_function(const CatalogEntry& e, const Grid1D& grid, std::uint64_t seed);
OrderField catalog_order(const CatalogEntry& e, const Grid1D& grid);

}  // namespace fracnum
