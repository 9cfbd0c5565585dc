#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fracnum/errors.hpp"
#include "fracnum/frac_deriv.hpp"
#include "fracnum/parallel.hpp"

using namespace fracnum;

namespace {

SampledFn fn(const Grid1D& g, double (*f)(double)) {
  std::vector<double> v;
  for (double x : g.points()) v.push_back(f(x));
  return SampledFn(g, std::move(v));
}

double rel_l2_from(const SampledFn& a, const SampledFn& b, double xmin) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.grid().point(i) < xmin) continue;
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("cell moments agree between closed form and series") {
  // the series branch starts at m = 8; compare against direct Simpson quadrature
  for (double alpha : {0.1, 0.5, 0.9})
    for (std::size_t m : {0, 1, 7, 8, 9, 100, 5000}) {
      for (auto [lo, hi] : {std::pair{0.0, 1.0}, std::pair{0.0, 0.37}}) {
        const auto mom = detail::cell_moments(m, lo, hi, alpha);
        if (m == 0) {
          CHECK(mom.m0 == doctest::Approx((std::pow(hi, 1 - alpha) - std::pow(lo, 1 - alpha)) / (1 - alpha)));
          continue;
        }
        const int K = 2000;
        double s0 = 0.0, s1 = 0.0;
        const double h = (hi - lo) / K;
        for (int k = 0; k <= K; ++k) {
          const double t = lo + k * h;
          const double w = (k == 0 || k == K) ? 1.0 : (k % 2 ? 4.0 : 2.0);
          s0 += w * std::pow(m + t, -alpha);
          s1 += w * t * std::pow(m + t, -alpha);
        }
        CHECK(mom.m0 == doctest::Approx(s0 * h / 3).epsilon(1e-10));
        CHECK(mom.m1 == doctest::Approx(s1 * h / 3).epsilon(1e-10));
      }
    }
}

TEST_CASE("left Caputo annihilates constants") {
  const auto g = build_grid(0.0, 1.0, 257);
  const SampledFn c(g, std::vector<double>(g.n(), 2.5));
  const auto d = caputo_left(c, OrderField::linear(g, 0.2, 0.9), 0.0);
  for (double v : d.values()) CHECK(std::abs(v) <= 1e-10);
}

TEST_CASE("left Caputo of monomials matches the closed form") {
  const auto g = build_grid(0.0, 1.0, 4096);
  for (int k : {1, 2}) {
    std::vector<double> v;
    for (double x : g.points()) v.push_back(std::pow(x, k));
    const SampledFn f(g, v);
    for (double a : {0.3, 0.5, 0.7}) {
      const auto d = caputo_left(f, OrderField::constant(g, a), 0.0);
      double worst = 0.0;
      for (std::size_t i = 0; i < g.n(); ++i) {
        const double x = g.point(i);
        if (x < 0.1) continue;
        const double exact = std::tgamma(k + 1.0) / std::tgamma(k + 1.0 - a) * std::pow(x, k - a);
        worst = std::max(worst, std::abs(d[i] - exact) / exact);
      }
      CHECK(worst <= 0.01);
    }
  }
  const auto f = fn(g, [](double x) { return x; });
  const auto d = caputo_left(f, OrderField::constant(g, 0.5), 0.0);
  CHECK(d[g.n() - 1] == doctest::Approx(1.1283791670955126).epsilon(0.01));
}

TEST_CASE("left Caputo near order one approaches the first derivative") {
  const auto g = build_grid(0.0, 1.0, 4096);
  const auto f = fn(g, [](double x) { return std::sin(std::numbers::pi * x); });
  const auto d = caputo_left(f, OrderField::constant(g, 0.99), 0.0);
  const auto fd = finite_diff(f);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 1; i + 1 < g.n(); ++i) {
    num += (d[i] - fd[i]) * (d[i] - fd[i]);
    den += fd[i] * fd[i];
  }
  CHECK(std::sqrt(num / den) <= 0.03);
}

TEST_CASE("Caputo rejects bad inputs") {
  const auto g = build_grid(0.0, 1.0, 16);
  const auto h = build_grid(0.0, 2.0, 16);
  const SampledFn f(g, std::vector<double>(16, 1.0));
  CHECK_THROWS_AS(caputo_left(f, OrderField::constant(h, 0.5), 0.0), PreconditionError);
  CHECK_THROWS_AS(caputo_left(f, OrderField::constant(g, 0.5), 0.5), PreconditionError);
  CHECK_THROWS_AS(caputo_right(f, OrderField::constant(h, 0.5)), PreconditionError);
}

TEST_CASE("classical RL of a constant and of x") {
  const auto g = build_grid(0.0, 1.0, 4096);
  const SampledFn one(g, std::vector<double>(g.n(), 1.0));
  const auto alpha = OrderField::constant(g, 0.5);
  const auto d = rl_derivative(one, alpha, DerivVariant::rl_classical());
  CHECK(d.values[g.n() - 1] == doctest::Approx(1.0 / std::sqrt(std::numbers::pi)).epsilon(0.02));

  const auto g8 = build_grid(0.0, 1.0, 8192);
  const auto a8 = OrderField::constant(g8, 0.5);
  const SampledFn c8(g8, std::vector<double>(g8.n(), 1.0));
  const auto x8 = fn(g8, [](double x) { return x; });
  CHECK(rel_l2_from(rl_derivative(c8, a8, DerivVariant::rl_classical()).values, gl_oracle(c8, 0.5, 0.0), 0.1) <= 0.02);
  CHECK(rel_l2_from(rl_derivative(x8, a8, DerivVariant::rl_classical()).values, gl_oracle(x8, 0.5, 0.0), 0.1) <= 0.01);
}

TEST_CASE("truncated RL annihilates constants away from the boundary") {
  const auto g = build_grid(0.0, 1.0, 1024);
  const SampledFn c(g, std::vector<double>(g.n(), 3.7));
  const auto alpha = OrderField::linear(g, 0.4, 0.8);
  const double eps = 0.05;
  const auto d = rl_derivative(c, alpha, DerivVariant::rl_truncated(eps));
  std::size_t unclipped = 0;
  for (std::size_t i = 0; i < g.n(); ++i) {
    // a point is clipped exactly when some stencil node sits closer than eps to a
    if (g.point(i) > eps + 2.0 * g.spacing()) CHECK_FALSE(d.clipped[i]);
    if (g.point(i) < eps - 2.0 * g.spacing()) CHECK(d.clipped[i]);
    if (d.clipped[i]) continue;
    ++unclipped;
    CHECK(std::abs(d.values[i]) <= 1e-8);
  }
  CHECK(unclipped > 900);
  CHECK_THROWS_AS(rl_derivative(c, alpha, DerivVariant::rl_truncated(1.5 * g.spacing())), PreconditionError);
  CHECK_THROWS_AS(rl_derivative(c, alpha, DerivVariant::caputo_left()), PreconditionError);
}

TEST_CASE("right Caputo") {
  const auto g = build_grid(0.0, 1.0, 4096);
  const auto alpha = OrderField::constant(g, 0.5);
  const SampledFn c(g, std::vector<double>(g.n(), -4.0));
  for (double v : caputo_right(c, alpha).values()) CHECK(std::abs(v) <= 1e-10);

  const auto x = fn(g, [](double t) { return t; });
  const auto d = caputo_right(x, alpha);
  CHECK(d[0] == doctest::Approx(1.0 / std::tgamma(1.5)).epsilon(0.01));
  CHECK(d[g.n() / 2] == doctest::Approx(std::sqrt(0.5) / std::tgamma(1.5)).epsilon(0.01));

  const auto s = fn(g, [](double t) { return std::sin(3.0 * t); });
  const auto var = OrderField::linear(g, 0.3, 0.7);
  const auto lhs = caputo_right(combine(2.0, x, 1.0, s), var);
  const auto a = caputo_right(x, var), b = caputo_right(s, var);
  for (std::size_t i = 0; i < g.n(); ++i)
    CHECK(std::abs(lhs[i] - (2.0 * a[i] + b[i])) <= 1e-10 * (1.0 + std::abs(lhs[i])));
}

TEST_CASE("theta weight") {
  const auto g = build_grid(0.0, 1.0, 4096);
  const auto alpha = OrderField::constant(g, 0.5);
  const SampledFn c(g, std::vector<double>(g.n(), 2.0));
  CHECK(theta_weight(c, alpha, DerivVariant::rl_truncated(0.1)).theta == 0.5);
  CHECK(theta_weight(c, alpha, DerivVariant::rl_classical()).theta == 1.0);

  // both components of x have L1 mass (2/3)/Gamma(3/2), so theta tends to 1/2
  const auto x = fn(g, [](double t) { return t; });
  const auto th = theta_weight(x, alpha, DerivVariant::rl_classical());
  CHECK(th.theta > 0.0);
  CHECK(th.theta < 1.0);
  CHECK(std::abs(th.theta - 0.5) <= 1e-3);
  CHECK(th.rl_mass == doctest::Approx(2.0 / 3.0 / std::tgamma(1.5)).epsilon(1e-3));

  const auto s = fn(g, [](double t) { return std::exp(t) * std::sin(5.0 * t); });
  const auto var = OrderField::linear(g, 0.3, 0.8);
  const double t1 = theta_weight(s, var, DerivVariant::rl_classical()).theta;
  const double t2 = theta_weight(scale(-3.5, s), var, DerivVariant::rl_classical()).theta;
  CHECK(t1 == doctest::Approx(t2).epsilon(1e-12));
}

TEST_CASE("adaptive hybrid") {
  const auto g = build_grid(0.0, 1.0, 1024);
  const auto alpha = OrderField::linear(g, 0.4, 0.8);
  const SampledFn c(g, std::vector<double>(g.n(), 3.7));
  const auto h = adaptive_hybrid(c, alpha, DerivVariant::rl_truncated(0.05));
  for (std::size_t i = 0; i < g.n(); ++i)
    if (!h.clipped[i]) CHECK(std::abs(h.values[i]) <= 1e-8);

  const auto x = fn(g, [](double t) { return t; });
  const auto forced = adaptive_hybrid(x, alpha, DerivVariant::rl_classical(), 1.0);
  const auto rl = rl_derivative(x, alpha, DerivVariant::rl_classical());
  CHECK(forced.values.data() == rl.values.data());

  const auto a5 = OrderField::constant(g, 0.5);
  const auto mix = adaptive_hybrid(x, a5, DerivVariant::rl_classical());
  for (std::size_t i = 0; i < g.n(); ++i) {
    const double lo = std::min(mix.rl[i], mix.caputo[i]), hi = std::max(mix.rl[i], mix.caputo[i]);
    CHECK(mix.values[i] >= lo - 1e-12);
    CHECK(mix.values[i] <= hi + 1e-12);
    CHECK(mix.values[i] == mix.theta * mix.rl[i] + (1.0 - mix.theta) * mix.caputo[i]);
  }
}

TEST_CASE("RL derivative is linear") {
  const auto g = build_grid(0.0, 1.0, 512);
  const auto alpha = OrderField::linear(g, 0.2, 0.6);
  const auto f = fn(g, [](double t) { return t * t; });
  const auto s = fn(g, [](double t) { return std::cos(4.0 * t); });
  for (auto v : {DerivVariant::rl_classical(), DerivVariant::rl_truncated(0.1)}) {
    const auto lhs = rl_derivative(combine(1.5, f, -2.0, s), alpha, v).values;
    const auto a = rl_derivative(f, alpha, v).values, b = rl_derivative(s, alpha, v).values;
    for (std::size_t i = 0; i < g.n(); ++i)
      CHECK(std::abs(lhs[i] - (1.5 * a[i] - 2.0 * b[i])) <= 1e-10 * (1.0 + std::abs(lhs[i])));
  }
}

TEST_CASE("Grunwald-Letnikov oracle") {
  const auto g = build_grid(0.0, 1.0, 1001);
  const auto x = fn(g, [](double t) { return t; });
  const auto d1 = gl_oracle(x, 1.0, 0.0);
  for (std::size_t i = 1; i < g.n(); ++i) CHECK(std::abs(d1[i] - 1.0) <= 1e-9);

  const auto g8 = build_grid(0.0, 1.0, 8192);
  const SampledFn one(g8, std::vector<double>(g8.n(), 1.0));
  CHECK(gl_oracle(one, 0.5, 0.0)[g8.n() - 1] == doctest::Approx(1.0 / std::sqrt(std::numbers::pi)).epsilon(0.02));

  auto err_at_one = [](long long n) {
    const auto gg = build_grid(0.0, 1.0, n);
    const auto f = fn(gg, [](double t) { return t; });
    return std::abs(gl_oracle(f, 0.5, 0.0)[gg.n() - 1] - 1.0 / std::tgamma(1.5));
  };
  CHECK(err_at_one(1025) / err_at_one(2049) >= 1.8);
  CHECK_THROWS_AS(gl_oracle(x, 1.5, 0.0), PreconditionError);
}

TEST_CASE("results do not depend on the worker count") {
  const auto g = build_grid(0.0, 1.0, 700);
  const auto f = fn(g, [](double t) { return std::sin(7.0 * t) + t; });
  const auto alpha = OrderField::linear(g, 0.25, 0.75);
  set_worker_count(1);
  const auto a = adaptive_hybrid(f, alpha, DerivVariant::rl_truncated(0.07));
  const auto ca = caputo_left(f, alpha, 0.0);
  set_worker_count(4);
  const auto b = adaptive_hybrid(f, alpha, DerivVariant::rl_truncated(0.07));
  const auto cb = caputo_left(f, alpha, 0.0);
  set_worker_count(1);
  CHECK(a.values.data() == b.values.data());
  CHECK(ca.data() == cb.data());
}
