#include "fracnum/levy_stable.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "fracnum/core_model.hpp"
#include "fracnum/errors.hpp"
#include "fracnum/parallel.hpp"

namespace fracnum {

namespace {

constexpr std::size_t kChunk = 4096;

struct Welford {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    n += 1.0;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  void merge(const Welford& o) {
    if (o.n == 0.0) return;
    const double total = n + o.n;
    const double d = o.mean - mean;
    mean += d * o.n / total;
    m2 += o.m2 + d * d * n * o.n / total;
    n = total;
  }
  double variance() const { return n > 1.0 ? m2 / (n - 1.0) : 0.0; }
};

// Runs fn(x) on n_mc draws of L_t, chunk by chunk, and merges the statistics in
// chunk order.
Welford subordinated_stats(double gamma, double t, long long n_mc, std::uint64_t seed,
                           const std::function<double(double)>& fn) {
  const std::size_t n = static_cast<std::size_t>(n_mc);
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<Welford> parts(chunks);
  parallel_for(n, kChunk, [&](std::size_t begin, std::size_t end) {
    const std::size_t c = begin / kChunk;
    Rng rng(substream_seed(seed, c));
    Welford w;
    for (std::size_t i = begin; i < end; ++i) {
      const double l = std::max(draw_subordinator_value(gamma, t, rng), kSubordinatorFloor);
      w.push(fn(l));
    }
    parts[c] = w;
  });
  Welford total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

}  // namespace

void StableParams::validate() const {
  require(stability > 0.0 && stability <= 2.0, "stability index must lie in (0, 2]");
  require(skew >= -1.0 && skew <= 1.0, "skew must lie in [-1, 1]");
  require(scale > 0.0 && std::isfinite(scale), "scale must be positive");
  require(std::isfinite(location), "location must be finite");
}

double draw_stable(const StableParams& p, Rng& rng) {
  const double half_pi = 0.5 * std::numbers::pi;
  const double v = std::numbers::pi * (rng.uniform() - 0.5);
  const double w = rng.exponential();
  const double a = p.stability;
  if (a == 1.0) {
    const double b = p.skew;
    const double x = (2.0 / std::numbers::pi) *
                     ((half_pi + b * v) * std::tan(v) -
                      b * std::log(half_pi * w * std::cos(v) / (half_pi + b * v)));
    return p.scale * x + (2.0 / std::numbers::pi) * b * p.scale * std::log(p.scale) + p.location;
  }
  const double b = a == 2.0 ? 0.0 : p.skew;
  const double zeta = b * std::tan(half_pi * a);
  const double shift = std::atan(zeta) / a;
  const double s = std::pow(1.0 + zeta * zeta, 1.0 / (2.0 * a));
  const double x = s * std::sin(a * (v + shift)) / std::pow(std::cos(v), 1.0 / a) *
                   std::pow(std::cos(v - a * (v + shift)) / w, (1.0 - a) / a);
  return p.scale * x + p.location;
}

std::vector<double> sample_stable(const StableParams& params, long long n, std::uint64_t seed) {
  params.validate();
  require(n >= 1, "sample_stable: n must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(n));
  parallel_for(out.size(), kChunk, [&](std::size_t begin, std::size_t end) {
    Rng rng(substream_seed(seed, begin / kChunk));
    for (std::size_t i = begin; i < end; ++i) out[i] = draw_stable(params, rng);
  });
  return out;
}

double draw_subordinator_value(double gamma, double t, Rng& rng) {
  const StableParams unit{gamma, 1.0, 1.0, 0.0};
  return std::pow(t, 1.0 / gamma) * draw_stable(unit, rng);
}

SubordinatorPath sample_subordinator(double gamma, double t_end, long long n_steps,
                                     std::uint64_t seed) {
  require(gamma > 0.0 && gamma < 1.0, "subordinator index gamma must lie in (0, 1)");
  require(t_end > 0.0 && std::isfinite(t_end), "t_end must be positive");
  require(n_steps >= 1, "n_steps must be >= 1");
  const double dt = t_end / static_cast<double>(n_steps);
  const auto inc = sample_stable({gamma, 1.0, 1.0, 0.0}, n_steps, seed);
  const double step_scale = std::pow(dt, 1.0 / gamma);
  SubordinatorPath path;
  path.times.resize(inc.size() + 1);
  path.values.resize(inc.size() + 1);
  path.times[0] = 0.0;
  path.values[0] = 0.0;
  for (std::size_t i = 0; i < inc.size(); ++i) {
    path.times[i + 1] = i + 1 == inc.size() ? t_end : dt * static_cast<double>(i + 1);
    // one-sided draws are nonnegative up to rounding in the CMS transform
    path.values[i + 1] = path.values[i] + std::max(0.0, step_scale * inc[i]);
  }
  return path;
}

KernelEstimate hadamard_kernel(double z, double alpha, double gamma, double t, long long n_mc,
                               std::uint64_t seed) {
  require(std::isfinite(z), "z must be finite");
  require(alpha >= 0.0 && alpha < 1.0, "kernel exponent alpha must lie in [0, 1)");
  require(gamma > 0.0 && gamma < 1.0, "gamma must lie in (0, 1)");
  require(t > 0.0 && std::isfinite(t), "t must be positive");
  require(n_mc >= 100, "n_mc must be >= 100");
  const double base = 1.0 + std::abs(z);
  const auto stats = subordinated_stats(gamma, t, n_mc, seed, [&](double l) {
    return std::pow(std::log(base + l), -alpha);
  });
  return {stats.mean, std::sqrt(stats.variance() / stats.n), n_mc};
}

double hadamard_kernel_literal(double z, double alpha, double gamma, int intervals) {
  require(alpha >= 0.0 && alpha < 1.0, "kernel exponent alpha must lie in [0, 1)");
  require(gamma > 0.0 && gamma < 1.0, "gamma must lie in (0, 1)");
  require(intervals >= 2 && intervals % 2 == 0, "Simpson needs an even interval count");
  const double lo = std::log(kSubordinatorFloor), hi = std::log(1e3);
  const double base = 1.0 + std::abs(z);
  // s = e^v, ds = s dv: integrand (ln(base + s))^{-alpha} s^{-gamma}
  auto g = [&](double v) {
    const double s = std::exp(v);
    return std::pow(std::log(base + s), -alpha) * std::exp(-gamma * v);
  };
  const double h = (hi - lo) / intervals;
  double acc = g(lo) + g(hi);
  for (int i = 1; i < intervals; ++i) acc += (i % 2 ? 4.0 : 2.0) * g(lo + i * h);
  return acc * h / 3.0;
}

VarianceFit variance_scaling_fit_from(double alpha, std::span<const double> t_grid,
                                      std::span<const double> variances) {
  require(t_grid.size() >= 4, "variance fit needs at least 4 times");
  require(variances.size() == t_grid.size(), "variance fit: length mismatch");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    require(t_grid[i] > 0.0, "variance fit: times must be positive");
    require(i == 0 || t_grid[i] > t_grid[i - 1], "variance fit: times must increase");
    require(variances[i] > 0.0 && std::isfinite(variances[i]), "variance fit: degenerate variance");
  }
  require(std::any_of(variances.begin(), variances.end(),
                      [&](double v) { return v != variances[0]; }),
          "variance fit: all variances equal");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    lx.push_back(std::log(t_grid[i]));
    ly.push_back(std::log(variances[i]));
  }
  const auto fit = least_squares(lx, ly);
  return {fit.slope, fit.intercept, 2.0 / alpha - 1.0,
          std::vector<double>(variances.begin(), variances.end())};
}

VarianceFit variance_scaling_fit(double alpha, double gamma, std::span<const double> t_grid,
                                 long long n_mc, std::uint64_t seed) {
  require(alpha > 0.0 && std::isfinite(alpha), "kernel exponent must be positive");
  require(gamma > 0.0 && gamma < 1.0, "gamma must lie in (0, 1)");
  require(n_mc >= 100, "n_mc must be >= 100");
  std::vector<double> vars;
  for (double t : t_grid) {
    require(t > 0.0, "variance fit: times must be positive");
    const auto stats = subordinated_stats(gamma, t, n_mc, seed, [&](double l) {
      return std::pow(std::log(2.0 + l), -alpha);
    });
    vars.push_back(stats.variance());
  }
  return variance_scaling_fit_from(alpha, t_grid, vars);
}

double ks_statistic_normal(std::span<const double> samples, double mean, double sd) {
  require(!samples.empty() && sd > 0.0, "KS test needs samples and sd > 0");
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double cdf = 0.5 * std::erfc(-(s[i] - mean) / (sd * std::numbers::sqrt2));
    d = std::max({d, (i + 1) / n - cdf, cdf - i / n});
  }
  return d;
}

double ks_critical_1pct(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

double hill_tail_index(std::span<const double> samples, double fraction) {
  require(fraction > 0.0 && fraction < 1.0, "Hill fraction must lie in (0, 1)");
  std::vector<double> a;
  a.reserve(samples.size());
  for (double x : samples) a.push_back(std::abs(x));
  std::sort(a.begin(), a.end(), std::greater<>());
  const std::size_t k = static_cast<std::size_t>(fraction * a.size());
  require(k >= 2 && k < a.size(), "Hill estimator needs more samples");
  const double threshold = a[k];
  require(threshold > 0.0, "Hill estimator: zero threshold");
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += std::log(a[i] / threshold);
  return static_cast<double>(k) / s;
}

}  // namespace fracnum
