#include "fracnum/frac_deriv.hpp"

#include <algorithm>
#include <cmath>

#include "fracnum/errors.hpp"
#include "fracnum/parallel.hpp"

namespace fracnum {

namespace detail {

CellMoments cell_moments(std::size_t m, double lo, double hi, double alpha) {
  const double md = static_cast<double>(m);
  if (m < 8) {
    const double p1 = 1.0 - alpha;
    const double p2 = 2.0 - alpha;
    const double m0 = (std::pow(md + hi, p1) - std::pow(md + lo, p1)) / p1;
    const double m1 = (std::pow(md + hi, p2) - std::pow(md + lo, p2)) / p2 - md * m0;
    return {m0, m1};
  }
  // (m + t)^{-alpha} = m^{-alpha} sum_k binom(-alpha, k) (t / m)^k
  double coeff = 1.0;
  double inv_pow = 1.0;
  double lo_pow = lo;  // lo^{k+1}
  double hi_pow = hi;  // hi^{k+1}
  double s0 = 0.0, s1 = 0.0;
  for (int k = 0; k < 64; ++k) {
    const double t0 = coeff * inv_pow * (hi_pow - lo_pow) / (k + 1);
    const double t1 = coeff * inv_pow * (hi_pow * hi - lo_pow * lo) / (k + 2);
    s0 += t0;
    s1 += t1;
    if (std::abs(t0) < 1e-18 * std::abs(s0) && std::abs(t1) < 1e-18 * std::abs(s1)) break;
    coeff *= (-alpha - k) / (k + 1);
    inv_pow /= md;
    lo_pow *= lo;
    hi_pow *= hi;
  }
  const double scale = std::pow(md, -alpha);
  return {scale * s0, scale * s1};
}

}  // namespace detail

namespace {

constexpr std::size_t kChunk = 64;

void check_order(const SampledFn& f, const OrderField& alpha) {
  require(f.grid() == alpha.grid(), "function and order field must share a grid");
  require(alpha.alpha0() > 0.0 && alpha.alpha1() < 1.0, "order must lie in (0, 1)");
}

// Hat-function weights of the cells [m, m+1] (in units of the spacing):
// node m gets lower[m], node m+1 gets upper[m].
struct KernelTable {
  double alpha = -1.0;
  std::vector<double> lower;
  std::vector<double> upper;

  void ensure(double a, std::size_t cells) {
    if (a != alpha) {
      alpha = a;
      lower.clear();
      upper.clear();
    }
    for (std::size_t m = lower.size(); m < cells; ++m) {
      const auto mom = detail::cell_moments(m, 0.0, 1.0, a);
      lower.push_back(mom.m0 - mom.m1);
      upper.push_back(mom.m1);
    }
  }
};

// sum over cells 0..cells-1 of lower[m] g(m) + upper[m] g(m+1), g(m) = sample(m)
template <class Sample>
double kernel_sum(const KernelTable& table, std::size_t cells, Sample sample) {
  double acc = 0.0;
  for (std::size_t m = 0; m < cells; ++m) acc += table.lower[m] * sample(m) + table.upper[m] * sample(m + 1);
  return acc;
}

// Backward memory integral int_{x_p - L}^{x_p} f(y) (x_p - y)^{-alpha} dy in units
// of spacing, where the window holds `window_cells` full cells plus a partial
// cell of fractional length `partial`. Clipped windows stop at index 0.
struct InnerIntegral {
  double value;
  bool clipped;
};

InnerIntegral backward_integral(std::span<const double> f, std::size_t p, const KernelTable& table,
                                double alpha, std::size_t window_cells, double partial,
                                bool full_memory) {
  auto sample = [&](std::size_t m) { return f[p - m]; };
  if (full_memory) return {kernel_sum(table, p, sample), false};
  const bool clipped = p < window_cells || (p == window_cells && partial > 0.0);
  if (clipped) return {kernel_sum(table, p, sample), true};
  double acc = kernel_sum(table, window_cells, sample);
  if (partial > 0.0) {
    const auto mom = detail::cell_moments(window_cells, 0.0, partial, alpha);
    acc += (mom.m0 - mom.m1) * f[p - window_cells] + mom.m1 * f[p - window_cells - 1];
  }
  return {acc, false};
}

}  // namespace

SampledFn caputo_left(const SampledFn& f, const OrderField& alpha, double a) {
  check_order(f, alpha);
  require(a == f.grid().a(), "caputo_left: base point must equal the grid's left endpoint");
  const auto df = finite_diff(f);
  const std::size_t n = f.size();
  const double h = f.grid().spacing();
  std::vector<double> out(n, 0.0);
  parallel_for(n, kChunk, [&](std::size_t begin, std::size_t end) {
    KernelTable table;
    for (std::size_t i = begin; i < end; ++i) {
      const double al = alpha[i];
      table.ensure(al, i);
      const double s = kernel_sum(table, i, [&](std::size_t m) { return df[i - m]; });
      out[i] = std::pow(h, 1.0 - al) * s / std::tgamma(1.0 - al);
    }
  });
  return SampledFn(f.grid(), std::move(out));
}

SampledFn caputo_right(const SampledFn& f, const OrderField& alpha) {
  check_order(f, alpha);
  const auto df = finite_diff(f);
  const std::size_t n = f.size();
  const double h = f.grid().spacing();
  std::vector<double> out(n, 0.0);
  parallel_for(n, kChunk, [&](std::size_t begin, std::size_t end) {
    KernelTable table;
    for (std::size_t i = begin; i < end; ++i) {
      const double al = alpha[i];
      const std::size_t cells = n - 1 - i;
      table.ensure(al, cells);
      const double s = kernel_sum(table, cells, [&](std::size_t m) { return df[i + m]; });
      out[i] = std::pow(h, 1.0 - al) * s / std::tgamma(1.0 - al);
    }
  });
  return SampledFn(f.grid(), std::move(out));
}

DerivResult rl_derivative(const SampledFn& f, const OrderField& alpha, const DerivVariant& variant) {
  check_order(f, alpha);
  require(variant.is_rl(), "rl_derivative requires an RL variant");
  const std::size_t n = f.size();
  require(n >= 3, "rl_derivative requires at least 3 grid points");
  const double h = f.grid().spacing();
  const bool full = variant.kind == DerivKind::rl_classical;
  std::size_t window_cells = 0;
  double partial = 0.0;
  if (!full) {
    require(std::isfinite(variant.epsilon) && variant.epsilon >= 2.0 * h * (1.0 - 1e-12),
            "truncated RL requires epsilon >= 2 * spacing");
    const double cells = variant.epsilon / h;
    window_cells = static_cast<std::size_t>(std::floor(cells + 1e-9));
    partial = cells - static_cast<double>(window_cells);
    if (partial < 1e-9) partial = 0.0;
  }
  const auto fv = f.values();
  std::vector<double> out(n, 0.0);
  std::vector<char> clipped(n, 0);

  parallel_for(n, kChunk, [&](std::size_t begin, std::size_t end) {
    KernelTable table;
    for (std::size_t i = begin; i < end; ++i) {
      const double al = alpha[i];
      table.ensure(al, full ? std::min(n - 1, std::max<std::size_t>(i + 1, 2)) : window_cells);
      auto inner = [&](std::size_t p) {
        return backward_integral(fv, p, table, al, window_cells, partial, full);
      };
      double diff;
      bool clip;
      if (i == 0) {
        const auto j0 = inner(0), j1 = inner(1), j2 = inner(2);
        diff = -3.0 * j0.value + 4.0 * j1.value - j2.value;
        clip = j0.clipped || j1.clipped || j2.clipped;
      } else if (i + 1 == n) {
        const auto j0 = inner(n - 1), j1 = inner(n - 2), j2 = inner(n - 3);
        diff = 3.0 * j0.value - 4.0 * j1.value + j2.value;
        clip = j0.clipped || j1.clipped || j2.clipped;
      } else {
        const auto up = inner(i + 1), down = inner(i - 1);
        diff = up.value - down.value;
        clip = up.clipped || down.clipped;
      }
      // inner integrals carry a factor h^{1-alpha}; the difference quotient divides by 2h
      out[i] = std::pow(h, 1.0 - al) * diff / (2.0 * h) / std::tgamma(1.0 - al);
      clipped[i] = clip ? 1 : 0;
    }
  });
  return {SampledFn(f.grid(), std::move(out)), std::vector<bool>(clipped.begin(), clipped.end())};
}

namespace {

double masked_l1(const SampledFn& g, const std::vector<bool>& excluded) {
  const auto w = g.grid().trapezoid_weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (excluded.empty() || !excluded[i]) sum += w[i] * std::abs(g[i]);
  return sum;
}

}  // namespace

ThetaWeight theta_weight(const SampledFn& f, const OrderField& alpha, const DerivVariant& variant,
                         double tie_tol) {
  require(variant.is_rl(), "theta_weight requires an RL variant");
  const auto rl = rl_derivative(f, alpha, variant);
  const auto cr = caputo_right(f, alpha);
  const double m_rl = masked_l1(rl.values, rl.clipped);
  const double m_c = masked_l1(cr, {});
  const double theta = (m_rl + m_c < tie_tol) ? 0.5 : m_rl / (m_rl + m_c);
  return {theta, m_rl, m_c, SampledFn(f.grid(), std::vector<double>(f.size(), theta))};
}

HybridResult adaptive_hybrid(const SampledFn& f, const OrderField& alpha,
                             const DerivVariant& variant, std::optional<double> theta_override) {
  require(variant.is_rl(), "adaptive_hybrid requires an RL variant");
  auto rl = rl_derivative(f, alpha, variant);
  auto cr = caputo_right(f, alpha);
  double theta;
  if (theta_override) {
    theta = *theta_override;
    require(theta >= 0.0 && theta <= 1.0, "theta must lie in [0, 1]");
  } else {
    const double m_rl = masked_l1(rl.values, rl.clipped);
    const double m_c = masked_l1(cr, {});
    theta = (m_rl + m_c < 1e-12) ? 0.5 : m_rl / (m_rl + m_c);
  }
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = theta * rl.values[i] + (1.0 - theta) * cr[i];
  return {SampledFn(f.grid(), std::move(out)), std::move(rl.values), std::move(cr), theta,
          std::move(rl.clipped)};
}

SampledFn gl_oracle(const SampledFn& f, double alpha, double a) {
  require(alpha > 0.0 && alpha <= 1.0, "gl_oracle requires a constant order in (0, 1]");
  const auto& grid = f.grid();
  require(a >= grid.a() && a <= grid.b(), "gl_oracle base point must lie on the grid interval");
  const std::size_t n = f.size();
  const double h = grid.spacing();
  const std::size_t first = static_cast<std::size_t>(std::ceil((a - grid.a()) / h - 1e-9));
  std::vector<double> w(n, 0.0);
  w[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) w[k] = w[k - 1] * (static_cast<double>(k) - 1.0 - alpha) / k;
  const double scale = std::pow(h, -alpha);
  std::vector<double> out(n, 0.0);
  parallel_for(n, kChunk, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if (i < first) continue;
      double s = 0.0;
      for (std::size_t k = 0; k <= i - first; ++k) s += w[k] * f[i - k];
      out[i] = s * scale;
    }
  });
  return SampledFn(grid, std::move(out));
}

}  // namespace fracnum
