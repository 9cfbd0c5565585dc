#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fracnum/core_model.hpp"
#include "fracnum/errors.hpp"
#include "fracnum/multiscale_approx.hpp"

using namespace fracnum;

TEST_CASE("build_grid spacing and points") {
  const auto g = build_grid(0.0, 1.0, 5);
  CHECK(g.spacing() == doctest::Approx(0.25));
  const auto x = g.points();
  const double expect[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int i = 0; i < 5; ++i) CHECK(x[i] == doctest::Approx(expect[i]).epsilon(1e-15));
  CHECK(x.back() == 1.0);

  const auto two = build_grid(0.0, 1.0, 2);
  CHECK(two.points() == std::vector<double>{0.0, 1.0});

  CHECK_THROWS_AS(build_grid(1.0, 0.0, 5), PreconditionError);
  CHECK_THROWS_AS(build_grid(0.0, 1.0, 1), PreconditionError);
}

TEST_CASE("last grid point is exactly b for awkward spacings") {
  const auto g = build_grid(-0.3, 0.7, 1000);
  CHECK(std::abs(g.point(999) - 0.7) <= 1e-12);
  double w = 0.0;
  for (double v : g.trapezoid_weights()) w += v;
  CHECK(w == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("catalog closed forms") {
  const auto g = build_grid(0.0, 1.0, 5);
  const auto c = synth_function("constant", g, {{"c", 3.7}}, 1);
  for (double v : c.values()) CHECK(v == 3.7);

  const auto s = synth_function("sine", g, {{"k", 1.0}}, 1);
  const double r = std::sqrt(2.0) / 2.0;
  const double expect[] = {0.0, r, 1.0, r, 0.0};
  for (int i = 0; i < 5; ++i) CHECK(s[i] == doctest::Approx(expect[i]).epsilon(1e-12));

  const auto m = synth_function("monomial", g, {{"degree", 2.0}, {"coeff", 3.0}}, 1);
  CHECK(m[2] == doctest::Approx(0.75));
  const auto cu = synth_function("cusp", g, {{"center", 0.5}, {"exponent", 0.5}}, 1);
  CHECK(cu[2] == 0.0);
  CHECK(cu[0] == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("catalog rejects bad input") {
  const auto g = build_grid(0.0, 1.0, 8);
  CHECK_THROWS_AS(synth_function("nope", g, {}, 1), PreconditionError);
  CHECK_THROWS_AS(synth_function("monomial", g, {{"degree", -1.0}}, 1), PreconditionError);
  CHECK_THROWS_AS(synth_function("sine", g, {{"frequency", 2.0}}, 1), PreconditionError);
  CHECK_THROWS_AS(synth_function("weierstrass_varH", g, {{"J", 2.5}}, 1), PreconditionError);
  CHECK_THROWS_AS(synth_function("weierstrass_varH", g, {{"H0", 1.2}}, 1), PreconditionError);
}

TEST_CASE("synthetic functions are deterministic per seed") {
  const auto g = build_grid(0.0, 1.0, 256);
  const ParamMap p{{"H0", 0.3}, {"H1", 0.7}};
  const auto a = synth_function("weierstrass_varH", g, p, 9);
  const auto b = synth_function("weierstrass_varH", g, p, 9);
  const auto c = synth_function("weierstrass_varH", g, p, 10);
  CHECK(a.data() == b.data());
  CHECK(a.data() != c.data());
}

TEST_CASE("surrogate with constant exponent has the prescribed local order") {
  const auto g = build_grid(0.0, 1.0, 4096);
  const auto f = synth_function("weierstrass_varH", g, {{"H0", 0.5}, {"J", 12.0}}, 42);
  const auto est = local_order_estimate(f, 64);
  double mean = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 512; i < 4096 - 512; ++i, ++count) mean += est[i];
  mean /= static_cast<double>(count);
  CHECK(std::abs(mean - 0.5) <= 0.15);
}

TEST_CASE("finite differences") {
  const auto g = build_grid(0.0, 1.0, 101);
  const auto lin = finite_diff(synth_function("monomial", g, {{"degree", 1.0}}, 0));
  for (double v : lin.values()) CHECK(std::abs(v - 1.0) <= 1e-12);
  const auto sq = finite_diff(synth_function("monomial", g, {{"degree", 2.0}}, 0));
  CHECK(std::abs(sq[50] - 1.0) <= 1e-12);
  CHECK(std::abs(sq[0] - 0.0) <= 1e-12);
  CHECK(std::abs(sq[100] - 2.0) <= 1e-12);

  auto max_err = [](std::size_t n) {
    const auto gg = build_grid(0.0, 1.0, static_cast<long long>(n));
    const auto d = finite_diff(synth_function("sine", gg, {}, 0));
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      e = std::max(e, std::abs(d[i] - std::numbers::pi * std::cos(std::numbers::pi * gg.point(i))));
    return e;
  };
  CHECK(max_err(256) / max_err(512) >= 3.5);

  CHECK_THROWS_AS(finite_diff(synth_function("sine", build_grid(0.0, 1.0, 2), {}, 0)),
                  PreconditionError);
}

TEST_CASE("finite differences are linear") {
  const auto g = build_grid(0.0, 2.0, 300);
  const auto f = synth_function("sine", g, {{"k", 3.0}}, 0);
  const auto h = synth_function("cusp", g, {{"center", 0.7}}, 0);
  const auto lhs = finite_diff(combine(2.0, f, -0.5, h));
  const auto df = finite_diff(f), dh = finite_diff(h);
  for (std::size_t i = 0; i < g.n(); ++i)
    CHECK(std::abs(lhs[i] - (2.0 * df[i] - 0.5 * dh[i])) <= 1e-12 * (1.0 + std::abs(lhs[i])));
}

TEST_CASE("order field bounds") {
  const auto g = build_grid(0.0, 1.0, 11);
  const auto a = OrderField::linear(g, 0.4, 0.8);
  CHECK(a.alpha0() == doctest::Approx(0.4));
  CHECK(a.alpha1() == doctest::Approx(0.8));
  CHECK(a.at(0.5) == doctest::Approx(0.6));
  CHECK_FALSE(a.is_constant());
  CHECK(OrderField::constant(g, 0.3).is_constant());
  CHECK_THROWS_AS(OrderField::constant(g, 1.0), PreconditionError);
  CHECK_THROWS_AS(OrderField::linear(g, 0.0, 0.5), PreconditionError);
}

TEST_CASE("norms and least squares") {
  const auto g = build_grid(0.0, 1.0, 1001);
  const auto f = synth_function("monomial", g, {{"degree", 1.0}}, 0);
  CHECK(l1_norm(f) == doctest::Approx(0.5));
  CHECK(l2_norm(f) == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-6));
  CHECK(sup_norm(f) == 1.0);
  const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
  const auto fit = least_squares(x, y);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(1.0));
}

TEST_CASE("run config validation") {
  RunConfig c;
  CHECK(c.seed == 42);
  CHECK_NOTHROW(c.validate());
  c.tolerance = 0.0;
  CHECK_THROWS_AS(c.validate(), PreconditionError);
}
