#include "fracnum/sine_transform.hpp"

#include <cmath>
#include <numbers>

#include "fracnum/errors.hpp"
#include "fracnum/parallel.hpp"

namespace fracnum {

namespace {

// sin(pi m / N) for m in [0, 2N); products k*i are reduced mod 2N so every
// entry of the transform matrix is an exact table lookup.
std::vector<double> sin_table(std::size_t intervals) {
  std::vector<double> t(2 * intervals);
  for (std::size_t m = 0; m < t.size(); ++m)
    t[m] = std::sin(std::numbers::pi * static_cast<double>(m) / static_cast<double>(intervals));
  return t;
}

}  // namespace

std::vector<double> sine_coefficients(const SampledFn& f) {
  const std::size_t n = f.size();
  require(n >= 3, "sine transform needs at least 3 grid points");
  const std::size_t intervals = n - 1;
  const std::size_t modes = n - 2;
  const auto table = sin_table(intervals);
  const double scale = std::sqrt(2.0 / f.grid().length()) * f.grid().spacing();
  std::vector<double> c(modes);
  parallel_for(modes, 32, [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      const std::size_t k = m + 1;
      double s = 0.0;
      for (std::size_t i = 1; i < intervals; ++i) s += f[i] * table[(k * i) % (2 * intervals)];
      c[m] = scale * s;
    }
  });
  return c;
}

SampledFn sine_synthesis(const Grid1D& grid, const std::vector<double>& coeffs) {
  const std::size_t n = grid.n();
  require(n >= 3, "sine synthesis needs at least 3 grid points");
  require(coeffs.size() == n - 2, "sine synthesis: coefficient count must be n - 2");
  const std::size_t intervals = n - 1;
  const auto table = sin_table(intervals);
  // basis functions sqrt(2/L) sin(k pi (x-a)/L)
  const double scale = std::sqrt(2.0 / grid.length());
  std::vector<double> out(n, 0.0);
  parallel_for(n - 2, 32, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin + 1; i < end + 1; ++i) {
      double s = 0.0;
      for (std::size_t m = 0; m < coeffs.size(); ++m) s += coeffs[m] * table[((m + 1) * i) % (2 * intervals)];
      out[i] = scale * s;
    }
  });
  return SampledFn(grid, std::move(out));
}

}  // namespace fracnum
