#pragma once

// Grids, sampled functions, order fields and the synthetic test-function
// catalog shared by every other module.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fracnum {

/// Uniform grid on [a, b] with n points (both endpoints included).
class Grid1D {
 public:
  Grid1D(double a, double b, std::size_t n);

  double a() const { return a_; }
  double b() const { return b_; }
  std::size_t n() const { return n_; }
  double spacing() const { return spacing_; }
  double length() const { return b_ - a_; }

  /// a + i * spacing; the last point is exactly b.
  double point(std::size_t i) const { return i + 1 == n_ ? b_ : a_ + static_cast<double>(i) * spacing_; }
  std::vector<double> points() const;

  /// Composite trapezoid weights (sum equals b - a).
  std::vector<double> trapezoid_weights() const;

  bool operator==(const Grid1D&) const = default;

 private:
  double a_;
  double b_;
  std::size_t n_;
  double spacing_;
};

Grid1D build_grid(double a, double b, long long n);

/// Function samples on a grid. All values are finite.
class SampledFn {
 public:
  SampledFn(Grid1D grid, std::vector<double> values);

  const Grid1D& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& data() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  Grid1D grid_;
  std::vector<double> values_;
};

/// a*f + b*g on a shared grid.
SampledFn combine(double a, const SampledFn& f, double b, const SampledFn& g);
SampledFn scale(double c, const SampledFn& f);

/// Spatially varying fractional order with 0 < alpha0 <= alpha(x) <= alpha1 < 1.
class OrderField {
 public:
  OrderField(Grid1D grid, std::vector<double> alpha);

  static OrderField constant(const Grid1D& grid, double value);
  /// Linear ramp from `left` at a to `right` at b.
  static OrderField linear(const Grid1D& grid, double left, double right);

  const Grid1D& grid() const { return grid_; }
  std::span<const double> values() const { return alpha_; }
  const std::vector<double>& data() const { return alpha_; }
  double operator[](std::size_t i) const { return alpha_[i]; }
  double alpha0() const { return alpha0_; }
  double alpha1() const { return alpha1_; }
  bool is_constant() const { return alpha0_ == alpha1_; }
  /// Linear interpolation of the field at x (clamped to [a, b]).
  double at(double x) const;

 private:
  Grid1D grid_;
  std::vector<double> alpha_;
  double alpha0_;
  double alpha1_;
};

struct RunConfig {
  std::uint64_t seed = 42;
  std::size_t grid_n = 1024;
  double tolerance = 1e-6;
  std::string output_path;

  void validate() const;
};

enum class CatalogId { constant, monomial, sine, cusp, weierstrass_varH };

CatalogId parse_catalog_id(std::string_view name);
std::string_view to_string(CatalogId id);

using ParamMap = std::map<std::string, double>;

/// Catalog entries and their parameters (defaults in parentheses):
///   constant          c (1)
///   monomial          degree (1), coeff (1)              coeff * x^degree
///   sine              k (1), amp (1)                     amp * sin(k pi x)
///   cusp              center (0.5), exponent (0.3), amp (1)
///   weierstrass_varH  H0 (0.5), H1 (H0), J (12), amp (1)
///       sum_{j=1..J} 2^{-j H(x)} cos(2^j pi x + phi_j), H linear from H0 at a
///       to H1 at b, phases phi_j uniform on [0, 2 pi) drawn from `seed`.
SampledFn synth_function(CatalogId id, const Grid1D& grid, const ParamMap& params,
                         std::uint64_t seed);
SampledFn synth_function(std::string_view name, const Grid1D& grid, const ParamMap& params,
                         std::uint64_t seed);

/// Second-order central differences inside, second-order one-sided at the ends.
SampledFn finite_diff(const SampledFn& f);

// Discrete norms with trapezoid weights.
double l1_norm(const SampledFn& f);
double l2_norm(const SampledFn& f);
double lp_norm(const SampledFn& f, double p);
double sup_norm(const SampledFn& f);

struct LinearFit {
  double slope;
  double intercept;
};

/// Ordinary least squares y ~ slope * x + intercept.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace fracnum
