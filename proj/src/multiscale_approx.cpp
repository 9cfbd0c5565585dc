#include "fracnum/multiscale_approx.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "fracnum/errors.hpp"
#include "fracnum/function_spaces.hpp"
#include "fracnum/parallel.hpp"

namespace fracnum {

namespace {

int log2_exact(std::size_t n) {
  require(n >= 2 && std::has_single_bit(n), "Haar transform needs a power-of-two grid length");
  return std::countr_zero(n);
}

// N = ceil(1 / (2 beta)), guarded against beta values a rounding step away
// from 1/(2m).
int order_N(double beta) { return static_cast<int>(std::ceil(1.0 / (2.0 * beta) - 1e-12)); }

}  // namespace

double WaveletCoeffs::energy() const {
  double e = scaling_coeff * scaling_coeff;
  for (const auto& lvl : detail)
    for (double c : lvl) e += c * c;
  return e;
}

WaveletCoeffs haar_decompose(const SampledFn& f) {
  const int J = log2_exact(f.size());
  const double root_h = std::sqrt(f.grid().spacing());
  std::vector<double> a(f.data());
  for (double& v : a) v *= root_h;
  WaveletCoeffs out;
  out.levels = J;
  out.grid = f.grid();
  out.detail.resize(J);
  const double r = 1.0 / std::sqrt(2.0);
  for (int j = J - 1; j >= 0; --j) {
    const std::size_t half = std::size_t{1} << j;
    std::vector<double> next(half), d(half);
    for (std::size_t k = 0; k < half; ++k) {
      next[k] = (a[2 * k] + a[2 * k + 1]) * r;
      d[k] = (a[2 * k] - a[2 * k + 1]) * r;
    }
    out.detail[j] = std::move(d);
    a = std::move(next);
  }
  out.scaling_coeff = a[0];
  return out;
}

SampledFn haar_reconstruct(const WaveletCoeffs& c) {
  require(c.levels >= 1 && static_cast<int>(c.detail.size()) == c.levels,
          "Haar reconstruct: malformed coefficients");
  require(c.grid.n() == c.total(), "Haar reconstruct: grid length mismatch");
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<double> a{c.scaling_coeff};
  for (int j = 0; j < c.levels; ++j) {
    const std::size_t half = std::size_t{1} << j;
    require(c.detail[j].size() == half, "Haar reconstruct: level size mismatch");
    std::vector<double> next(2 * half);
    for (std::size_t k = 0; k < half; ++k) {
      next[2 * k] = (a[k] + c.detail[j][k]) * r;
      next[2 * k + 1] = (a[k] - c.detail[j][k]) * r;
    }
    a = std::move(next);
  }
  const double inv_root_h = 1.0 / std::sqrt(c.grid.spacing());
  for (double& v : a) v *= inv_root_h;
  return SampledFn(c.grid, std::move(a));
}

ThresholdPlan ThresholdPlan::scaled(double factor) const {
  ThresholdPlan p = *this;
  for (double& t : p.tau_j) t *= factor;
  for (auto& lvl : p.tau)
    for (double& t : lvl) t *= factor;
  return p;
}

ThresholdPlan threshold_plan(const OrderField& alpha, double eps) {
  require(eps >= 0.0 && std::isfinite(eps), "threshold plan: eps must be >= 0");
  const int J = log2_exact(alpha.grid().n());
  const std::size_t n = alpha.grid().n();
  ThresholdPlan p;
  p.levels = J;
  p.eps = eps;
  p.beta.resize(J);
  p.N.resize(J);
  p.tau.resize(J);
  for (int j = 0; j < J; ++j) {
    const std::size_t count = std::size_t{1} << j;
    const std::size_t support = n / count;
    double level_min = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < count; ++k) {
      const auto first = alpha.values().begin() + static_cast<std::ptrdiff_t>(k * support);
      const double b = *std::min_element(first, first + static_cast<std::ptrdiff_t>(support));
      const int nn = order_N(b);
      p.beta[j].push_back(b);
      p.N[j].push_back(nn);
      p.tau[j].push_back(std::exp2(-j * b * nn));
      level_min = std::min(level_min, b);
    }
    const int nn = order_N(level_min);
    p.beta_j.push_back(level_min);
    p.N_j.push_back(nn);
    p.eps_j.push_back(eps);
    p.tau_j.push_back(std::exp2(-j * level_min * nn));
  }
  return p;
}

ApproxResult adaptive_approx(const SampledFn& f, const ThresholdPlan& plan) {
  auto c = haar_decompose(f);
  require(plan.levels == c.levels && static_cast<int>(plan.tau.size()) == c.levels,
          "adaptive_approx: plan does not match the coefficient shape");
  std::size_t retained = 1;
  double discarded = 0.0;
  for (int j = 0; j < c.levels; ++j) {
    require(plan.tau[j].size() == c.detail[j].size(), "adaptive_approx: level size mismatch");
    for (std::size_t k = 0; k < c.detail[j].size(); ++k) {
      double& v = c.detail[j][k];
      if (std::abs(v) < plan.tau[j][k]) {
        discarded += v * v;
        v = 0.0;
      } else {
        ++retained;
      }
    }
  }
  auto approx = haar_reconstruct(c);
  double err = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) err += (f[i] - approx[i]) * (f[i] - approx[i]);
  err = std::sqrt(err * f.grid().spacing());
  return {std::move(approx), retained, std::sqrt(discarded), err};
}

double error_bound_multilevel(const ThresholdPlan& plan, const OrderField& alpha) {
  require(static_cast<int>(plan.beta_j.size()) == plan.levels && plan.levels >= 1,
          "bound: malformed plan");
  double sum = 0.0;
  for (int j = 1; j <= plan.levels; ++j) {
    // term j pairs with storage level j - 1 (supports of width 2^{1-j})
    const std::size_t idx = static_cast<std::size_t>(j - 1);
    const double b = plan.beta_j[idx];
    const double e = plan.eps_j[idx];
    require(e >= 0.0 && e < 2.0 * plan.N_j[idx], "bound: eps_j must lie in [0, 2 N_j)");
    sum += std::exp2(-j * b * (2.0 * plan.N_j[idx] - e));
  }
  return sum + anisotropic_penalty(alpha).value;
}

double error_bound_uniform(long long n, double beta, int N, double eps, const OrderField& alpha) {
  require(n >= 1, "bound: n must be >= 1");
  require(beta > 0.0, "bound: beta must be positive");
  require(N >= 1, "bound: N must be >= 1");
  require(eps >= 0.0 && eps < 2.0 * N, "bound: eps must lie in [0, 2N)");
  return std::pow(static_cast<double>(n), -beta * (2.0 * N - eps)) + anisotropic_penalty(alpha).value;
}

std::vector<std::pair<double, double>> partition_domain(const OrderField& alpha, long long n,
                                                        double beta) {
  require(n >= 2, "partition: n must be >= 2");
  require(beta > 0.0 && std::isfinite(beta), "partition: beta must be positive");
  const double a = alpha.grid().a(), b = alpha.grid().b();
  const double nd = static_cast<double>(n);
  std::vector<std::pair<double, double>> cells;
  double x = a;
  while (true) {
    const double w = std::pow(nd, -beta / alpha.at(x));
    const double r = b - x;
    const double k = std::max(1.0, std::round(r / w));
    if (k <= 1.0) {
      // a sliver shorter than half the target width is absorbed by the previous cell
      if (r < 0.5 * w && !cells.empty())
        cells.back().second = b;
      else
        cells.emplace_back(x, b);
      break;
    }
    const double right = x + r / k;
    cells.emplace_back(x, right);
    x = right;
  }
  return cells;
}

OrderField local_order_estimate(const SampledFn& f, int window) {
  const std::size_t n = f.size();
  require(window >= 4 && static_cast<std::size_t>(window) <= n / 4,
          "local order: window must lie in [4, n/4]");
  std::vector<std::size_t> radii;
  for (std::size_t r = 1; r <= static_cast<std::size_t>(window); r *= 2) radii.push_back(r);
  std::vector<double> log_r;
  for (auto r : radii) log_r.push_back(std::log(static_cast<double>(r) * f.grid().spacing()));
  std::vector<double> out(n, kOrderClipHigh);
  parallel_for(n, 256, [&](std::size_t begin, std::size_t end) {
    std::vector<double> log_osc(radii.size());
    for (std::size_t i = begin; i < end; ++i) {
      double lo = f[i], hi = f[i];
      std::size_t reach = 0;
      bool flat = false;
      for (std::size_t m = 0; m < radii.size(); ++m) {
        for (; reach < radii[m]; ++reach) {
          const std::size_t d = reach + 1;
          if (i >= d) {
            lo = std::min(lo, f[i - d]);
            hi = std::max(hi, f[i - d]);
          }
          if (i + d < n) {
            lo = std::min(lo, f[i + d]);
            hi = std::max(hi, f[i + d]);
          }
        }
        const double osc = hi - lo;
        if (!(osc > 0.0)) {
          flat = true;
          break;
        }
        log_osc[m] = std::log(osc);
      }
      if (flat) continue;
      const double slope = least_squares(log_r, log_osc).slope;
      out[i] = std::clamp(slope, kOrderClipLow, kOrderClipHigh);
    }
  });
  return OrderField(f.grid(), std::move(out));
}

std::vector<CatalogEntry> reference_catalog() {
  std::vector<CatalogEntry> c;
  const double smooth = 0.95;
  c.push_back({"constant_1", CatalogId::constant, {{"c", 1.0}}, smooth, smooth});
  c.push_back({"constant_-2.5", CatalogId::constant, {{"c", -2.5}}, smooth, smooth});
  for (double deg : {1.0, 2.0, 3.0})
    c.push_back({"monomial_" + std::to_string(static_cast<int>(deg)), CatalogId::monomial,
                 {{"degree", deg}}, smooth, smooth});
  for (double k : {1.0, 2.0, 3.0, 5.0})
    c.push_back({"sine_" + std::to_string(static_cast<int>(k)), CatalogId::sine, {{"k", k}}, smooth,
                 smooth});
  const std::pair<double, double> cusps[] = {{0.5, 0.3}, {0.5, 0.6}, {0.25, 0.4}, {0.7, 0.8}};
  for (auto [center, ex] : cusps)
    c.push_back({"cusp", CatalogId::cusp, {{"center", center}, {"exponent", ex}}, ex, ex});
  const std::pair<double, double> ramps[] = {{0.3, 0.3}, {0.5, 0.5}, {0.7, 0.7}, {0.3, 0.7},
                                             {0.7, 0.3}, {0.4, 0.6}, {0.6, 0.9}};
  for (auto [h0, h1] : ramps)
    c.push_back({"weierstrass", CatalogId::weierstrass_varH, {{"H0", h0}, {"H1", h1}, {"J", 8.0}},
                 h0, h1});
  return c;
}

SampledFn catalog_function(const CatalogEntry& e, const Grid1D& grid, std::uint64_t seed) {
  return synth_function(e.id, grid, e.params, seed);
}

OrderField catalog_order(const CatalogEntry& e, const Grid1D& grid) {
  return OrderField::linear(grid, e.order_left, e.order_right);
}

}  // namespace fracnum
