#include "fracnum/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "fracnum/errors.hpp"
#include "fracnum/rng.hpp"

namespace fracnum {

Grid1D::Grid1D(double a, double b, std::size_t n) : a_(a), b_(b), n_(n) {
  require(std::isfinite(a) && std::isfinite(b), "grid endpoints must be finite");
  require(a < b, "grid requires a < b");
  require(n >= 2, "grid requires at least 2 points");
  spacing_ = (b - a) / static_cast<double>(n - 1);
}

std::vector<double> Grid1D::points() const {
  std::vector<double> x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = point(i);
  return x;
}

std::vector<double> Grid1D::trapezoid_weights() const {
  std::vector<double> w(n_, spacing_);
  w.front() = 0.5 * spacing_;
  w.back() = 0.5 * spacing_;
  return w;
}

Grid1D build_grid(double a, double b, long long n) {
  require(n >= 2, "build_grid: n must be >= 2");
  require(a < b, "build_grid: a must be < b");
  return Grid1D(a, b, static_cast<std::size_t>(n));
}

SampledFn::SampledFn(Grid1D grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  require(values_.size() == grid_.n(), "sampled function length must equal grid size");
  for (double v : values_) require(std::isfinite(v), "sampled function values must be finite");
}

SampledFn combine(double a, const SampledFn& f, double b, const SampledFn& g) {
  require(f.grid() == g.grid(), "combine: grid mismatch");
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * f[i] + b * g[i];
  return SampledFn(f.grid(), std::move(out));
}

SampledFn scale(double c, const SampledFn& f) {
  std::vector<double> out(f.data());
  for (double& v : out) v *= c;
  return SampledFn(f.grid(), std::move(out));
}

OrderField::OrderField(Grid1D grid, std::vector<double> alpha)
    : grid_(grid), alpha_(std::move(alpha)) {
  require(alpha_.size() == grid_.n(), "order field length must equal grid size");
  for (double v : alpha_) require(std::isfinite(v), "order field values must be finite");
  const auto [lo, hi] = std::minmax_element(alpha_.begin(), alpha_.end());
  alpha0_ = *lo;
  alpha1_ = *hi;
  require(alpha0_ > 0.0 && alpha1_ < 1.0, "order field must satisfy 0 < alpha(x) < 1");
}

OrderField OrderField::constant(const Grid1D& grid, double value) {
  return OrderField(grid, std::vector<double>(grid.n(), value));
}

OrderField OrderField::linear(const Grid1D& grid, double left, double right) {
  std::vector<double> alpha(grid.n());
  for (std::size_t i = 0; i < grid.n(); ++i) {
    const double t = (grid.point(i) - grid.a()) / grid.length();
    alpha[i] = left + (right - left) * t;
  }
  return OrderField(grid, std::move(alpha));
}

double OrderField::at(double x) const {
  const double s = std::clamp((x - grid_.a()) / grid_.spacing(), 0.0,
                              static_cast<double>(grid_.n() - 1));
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(s), grid_.n() - 2);
  const double t = s - static_cast<double>(i);
  return (1.0 - t) * alpha_[i] + t * alpha_[i + 1];
}

void RunConfig::validate() const {
  require(tolerance > 0.0, "tolerance must be positive");
  require(grid_n >= 2, "grid_n must be >= 2");
}

CatalogId parse_catalog_id(std::string_view name) {
  if (name == "constant") return CatalogId::constant;
  if (name == "monomial") return CatalogId::monomial;
  if (name == "sine") return CatalogId::sine;
  if (name == "cusp") return CatalogId::cusp;
  if (name == "weierstrass_varH") return CatalogId::weierstrass_varH;
  throw PreconditionError("unknown catalog id: " + std::string(name));
}

std::string_view to_string(CatalogId id) {
  switch (id) {
    case CatalogId::constant: return "constant";
    case CatalogId::monomial: return "monomial";
    case CatalogId::sine: return "sine";
    case CatalogId::cusp: return "cusp";
    case CatalogId::weierstrass_varH: return "weierstrass_varH";
  }
  return "?";
}

namespace {

class Params {
 public:
  Params(const ParamMap& map, std::initializer_list<std::string_view> allowed) : map_(map) {
    const std::set<std::string_view> ok(allowed);
    for (const auto& [key, value] : map) {
      require(ok.contains(key), "unknown catalog parameter: " + key);
      require(std::isfinite(value), "catalog parameter must be finite: " + key);
    }
  }
  double get(const std::string& key, double fallback) const {
    const auto it = map_.find(key);
    return it == map_.end() ? fallback : it->second;
  }

 private:
  const ParamMap& map_;
};

}  // namespace

SampledFn synth_function(CatalogId id, const Grid1D& grid, const ParamMap& params,
                         std::uint64_t seed) {
  const auto x = grid.points();
  std::vector<double> v(grid.n());
  switch (id) {
    case CatalogId::constant: {
      const Params p(params, {"c"});
      std::fill(v.begin(), v.end(), p.get("c", 1.0));
      break;
    }
    case CatalogId::monomial: {
      const Params p(params, {"degree", "coeff"});
      const double degree = p.get("degree", 1.0);
      const double coeff = p.get("coeff", 1.0);
      require(degree >= 0.0, "monomial degree must be non-negative");
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff * std::pow(x[i], degree);
      break;
    }
    case CatalogId::sine: {
      const Params p(params, {"k", "amp"});
      const double k = p.get("k", 1.0);
      const double amp = p.get("amp", 1.0);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = amp * std::sin(k * std::numbers::pi * x[i]);
      break;
    }
    case CatalogId::cusp: {
      const Params p(params, {"center", "exponent", "amp"});
      const double center = p.get("center", 0.5);
      const double exponent = p.get("exponent", 0.3);
      const double amp = p.get("amp", 1.0);
      require(exponent > 0.0, "cusp exponent must be positive");
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = amp * std::pow(std::abs(x[i] - center), exponent);
      break;
    }
    case CatalogId::weierstrass_varH: {
      const Params p(params, {"H0", "H1", "J", "amp"});
      const double h0 = p.get("H0", 0.5);
      const double h1 = p.get("H1", h0);
      const double levels = p.get("J", 12.0);
      const double amp = p.get("amp", 1.0);
      require(h0 > 0.0 && h0 < 1.0 && h1 > 0.0 && h1 < 1.0,
              "weierstrass_varH exponents must lie in (0, 1)");
      require(levels >= 1.0 && levels <= 40.0 && levels == std::floor(levels),
              "weierstrass_varH J must be an integer in [1, 40]");
      const int J = static_cast<int>(levels);
      Rng rng(seed);
      std::vector<double> phase(J + 1, 0.0);
      for (int j = 1; j <= J; ++j) phase[j] = rng.uniform(0.0, 2.0 * std::numbers::pi);
      for (std::size_t i = 0; i < v.size(); ++i) {
        const double t = (x[i] - grid.a()) / grid.length();
        const double H = h0 + (h1 - h0) * t;
        double sum = 0.0;
        for (int j = 1; j <= J; ++j) {
          const double freq = std::ldexp(1.0, j);
          sum += std::pow(2.0, -j * H) * std::cos(freq * std::numbers::pi * x[i] + phase[j]);
        }
        v[i] = amp * sum;
      }
      break;
    }
  }
  for (double value : v) require(std::isfinite(value), "catalog function produced non-finite values");
  return SampledFn(grid, std::move(v));
}

SampledFn synth_function(std::string_view name, const Grid1D& grid, const ParamMap& params,
                         std::uint64_t seed) {
  return synth_function(parse_catalog_id(name), grid, params, seed);
}

SampledFn finite_diff(const SampledFn& f) {
  const std::size_t n = f.size();
  require(n >= 3, "finite_diff requires at least 3 grid points");
  const double h = f.grid().spacing();
  std::vector<double> d(n);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  return SampledFn(f.grid(), std::move(d));
}

double l1_norm(const SampledFn& f) { return lp_norm(f, 1.0); }

double l2_norm(const SampledFn& f) { return lp_norm(f, 2.0); }

double lp_norm(const SampledFn& f, double p) {
  require(p >= 1.0, "lp_norm requires p >= 1");
  const auto w = f.grid().trapezoid_weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = std::abs(f[i]);
    sum += w[i] * (p == 1.0 ? a : p == 2.0 ? a * a : std::pow(a, p));
  }
  return p == 1.0 ? sum : p == 2.0 ? std::sqrt(sum) : std::pow(sum, 1.0 / p);
}

double sup_norm(const SampledFn& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size() && x.size() >= 2, "least_squares needs >= 2 paired samples");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  require(sxx > 0.0, "least_squares: abscissae are all equal");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace fracnum
