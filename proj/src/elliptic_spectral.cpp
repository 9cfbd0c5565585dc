#include "fracnum/elliptic_spectral.hpp"

#include <cmath>
#include <numbers>

#include "fracnum/errors.hpp"
#include "fracnum/function_spaces.hpp"
#include "fracnum/sine_transform.hpp"

namespace fracnum {

PoissonSolution solve_frac_poisson(const SampledFn& f, double alpha) {
  require(alpha > 0.0 && alpha <= 1.0, "elliptic: alpha must lie in (0, 1]");
  require(std::abs(f[0]) <= 1e-8 && std::abs(f[f.size() - 1]) <= 1e-8,
          "elliptic: f must vanish at both endpoints");
  const auto fk = sine_coefficients(f);
  const double length = f.grid().length();
  std::vector<double> uk(fk.size());
  double res = 0.0, fnorm = 0.0;
  for (std::size_t m = 0; m < fk.size(); ++m) {
    const double lambda = std::pow(static_cast<double>(m + 1) * std::numbers::pi / length, 2.0 * alpha);
    uk[m] = fk[m] / lambda;
    const double r = lambda * uk[m] - fk[m];
    res += r * r;
    fnorm += fk[m] * fk[m];
  }
  const double residual = fnorm > 0.0 ? std::sqrt(res / fnorm) : 0.0;
  auto u = sine_synthesis(f.grid(), uk);
  return {std::move(u), std::move(uk), residual};
}

double regularity_ratio(const SampledFn& f, double alpha) {
  const double fn = l2_norm(f);
  require(fn > 0.0, "regularity ratio: f must be nonzero");
  const auto sol = solve_frac_poisson(f, alpha);
  return sobolev_norm_spectral(sol.u, 2.0 * alpha).value / fn;
}

double mode_regularity_ratio(int k, double alpha, double length) {
  require(k >= 1, "mode index must be >= 1");
  const double kpi = k * std::numbers::pi / length;
  return std::pow(1.0 + kpi * kpi, alpha) / std::pow(kpi, 2.0 * alpha);
}

}  // namespace fracnum
