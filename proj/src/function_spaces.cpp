#include "fracnum/function_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracnum/errors.hpp"
#include "fracnum/parallel.hpp"
#include "fracnum/sine_transform.hpp"

namespace fracnum {

namespace {

constexpr std::size_t kRowChunk = 16;

// Evaluates row(i) for every i and sums the rows in index order, so the total
// is the same for any worker count.
template <class Row>
double ordered_row_sum(std::size_t n, Row row) {
  std::vector<double> rows(n, 0.0);
  parallel_for(n, kRowChunk, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) rows[i] = row(i);
  });
  double total = 0.0;
  for (double r : rows) total += r;
  return total;
}

template <class Row>
double row_max(std::size_t n, Row row) {
  std::vector<double> rows(n, 0.0);
  parallel_for(n, kRowChunk, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) rows[i] = row(i);
  });
  return *std::max_element(rows.begin(), rows.end());
}

}  // namespace

std::string_view to_string(NormKind kind) {
  switch (kind) {
    case NormKind::gagliardo: return "gagliardo";
    case NormKind::besov: return "besov";
    case NormKind::holder: return "holder";
    case NormKind::sobolev_spectral: return "sobolev_spectral";
    case NormKind::penalty: return "penalty";
  }
  return "unknown";
}

NormKind parse_norm_kind(std::string_view name) {
  for (auto k : {NormKind::gagliardo, NormKind::besov, NormKind::holder,
                 NormKind::sobolev_spectral, NormKind::penalty})
    if (to_string(k) == name) return k;
  throw PreconditionError("unknown norm kind: " + std::string(name));
}

NormReport gagliardo_seminorm(const SampledFn& f, double s, double p) {
  require(s > 0.0 && s < 1.0, "gagliardo: s must lie in (0, 1)");
  require(p >= 1.0 && std::isfinite(p), "gagliardo: p must be >= 1");
  const std::size_t n = f.size();
  const auto w = f.grid().trapezoid_weights();
  const double h = f.grid().spacing();
  const double expo = 1.0 + s * p;
  const double total = ordered_row_sum(n, [&](std::size_t i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double dist = h * std::abs(static_cast<double>(i) - static_cast<double>(j));
      acc += std::pow(std::abs(f[i] - f[j]), p) / std::pow(dist, expo) * w[j];
    }
    return acc * w[i];
  });
  return {std::pow(total, 1.0 / p), n, NormKind::gagliardo};
}

double besov_increment(const SampledFn& f, double alpha, double p) {
  require(alpha > 0.0 && alpha < 1.0, "besov: alpha must lie in (0, 1)");
  require(p >= 1.0 && std::isfinite(p), "besov: p must be >= 1");
  const std::size_t n = f.size();
  const double h = f.grid().spacing();
  return row_max(n - 1, [&](std::size_t km1) {
    const std::size_t k = km1 + 1;
    const std::size_t m = n - k;  // number of points x_i with x_i + k h on the grid
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double wi = (m == 1) ? 0.0 : ((i == 0 || i + 1 == m) ? 0.5 * h : h);
      acc += std::pow(std::abs(f[i + k] - f[i]), p) * wi;
    }
    return std::pow(k * h, -alpha) * std::pow(acc, 1.0 / p);
  });
}

NormReport besov_norm(const SampledFn& f, double alpha, double p) {
  const double inc = besov_increment(f, alpha, p);
  return {inc + lp_norm(f, p), f.size(), NormKind::besov};
}

NormReport holder_seminorm(const SampledFn& f, double alpha) {
  require(alpha > 0.0 && alpha <= 1.0, "holder: alpha must lie in (0, 1]");
  const std::size_t n = f.size();
  const double h = f.grid().spacing();
  std::vector<double> inv_pow(n, 0.0);  // (k h)^{-alpha}
  for (std::size_t k = 1; k < n; ++k) inv_pow[k] = std::pow(k * h, -alpha);
  const double value = row_max(n, [&](std::size_t i) {
    double best = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) best = std::max(best, std::abs(f[j] - f[i]) * inv_pow[j - i]);
    return best;
  });
  return {value, n, NormKind::holder};
}

double InterpolationGap::sharp_constant() const { return 1.0 + std::pow(2.0, 1.0 - theta); }

InterpolationGap holder_interpolation_gap(const SampledFn& f, const SampledFn& g, double alpha,
                                          double eps) {
  require(alpha > 0.0 && alpha <= 1.0, "interpolation: alpha must lie in (0, 1]");
  require(eps > 0.0 && eps < alpha, "interpolation: eps must lie in (0, alpha)");
  const auto d = combine(1.0, f, -1.0, g);
  const double sup = sup_norm(d);
  const double theta = (alpha - eps) / alpha;
  const double lhs = sup + holder_seminorm(d, alpha - eps).value;
  const double full = sup + holder_seminorm(d, alpha).value;
  const double rhs = std::pow(sup, 1.0 - theta) * std::pow(full, theta);
  return {lhs, rhs, theta};
}

double sobolev_embedding_q(int d, double s, double p) {
  require(d >= 1, "embedding: d must be >= 1");
  require(s > 0.0 && s < 1.0, "embedding: s must lie in (0, 1)");
  require(p >= 1.0 && std::isfinite(p), "embedding: p must lie in [1, inf)");
  require(s * p < d, "embedding: s p >= d, no Lebesgue embedding exponent");
  return d * p / (d - s * p);
}

NormReport anisotropic_penalty(const OrderField& alpha) {
  const SampledFn a(alpha.grid(), alpha.data());
  const auto da = finite_diff(a);
  const auto w = alpha.grid().trapezoid_weights();
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += w[i] * da[i] * da[i] / std::pow(a[i], 2.5);
  return {acc, a.size(), NormKind::penalty};
}

NormReport sobolev_norm_spectral(const SampledFn& f, double s) {
  require(s >= 0.0 && std::isfinite(s), "spectral norm: s must be >= 0");
  require(std::abs(f[0]) <= 1e-8 && std::abs(f[f.size() - 1]) <= 1e-8,
          "spectral norm: f must vanish at both endpoints");
  const auto c = sine_coefficients(f);
  const double length = f.grid().length();
  double acc = 0.0;
  for (std::size_t m = 0; m < c.size(); ++m) {
    const double kpi = static_cast<double>(m + 1) * std::numbers::pi / length;
    acc += std::pow(1.0 + kpi * kpi, s) * c[m] * c[m];
  }
  return {std::sqrt(acc), f.size(), NormKind::sobolev_spectral};
}

}  // namespace fracnum
