#include "fracnum/commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <type_traits>

#include "fracnum/elliptic_spectral.hpp"
#include "fracnum/errors.hpp"
#include "fracnum/frac_deriv.hpp"
#include "fracnum/function_spaces.hpp"
#include "fracnum/levy_stable.hpp"
#include "fracnum/multiscale_approx.hpp"
#include "fracnum/prokhorov_metric.hpp"
#include "fracnum/qfgd_opt.hpp"
#include "fracnum/rng.hpp"

namespace fracnum {

namespace {

double to_real(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  require(res.ec == std::errc() && res.ptr == s.data() + s.size(), "not a number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string line(const std::string& key, const std::string& value) { return key + ": " + value + "\n"; }
std::string line(const std::string& key, double value) { return line(key, g17(value)); }
template <class Int>
  requires std::is_integral_v<Int>
std::string line(const std::string& key, Int value) {
  return line(key, std::to_string(value));
}

CsvRow row(const std::string& exp, const std::string& method, long long it, long long n, double err,
           std::uint64_t seed) {
  return {exp, method, it, n, err, seed};
}

}  // namespace

ParamMap parse_params(const std::vector<std::string>& items) {
  ParamMap m;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    require(eq != std::string::npos && eq > 0, "parameter must look like key=value: '" + item + "'");
    m[item.substr(0, eq)] = to_real(item.substr(eq + 1));
  }
  return m;
}

CommandResult cmd_deriv(const DerivOptions& o, const RunConfig& cfg) {
  cfg.validate();
  const Grid1D grid = build_grid(0.0, 1.0, static_cast<long long>(cfg.grid_n));
  const auto f = synth_function(o.func, grid, o.params, cfg.seed);
  const auto alpha = OrderField::linear(grid, o.alpha0, o.alpha1);
  const auto rl_variant = o.epsilon > 0.0 ? DerivVariant::rl_truncated(o.epsilon)
                                          : DerivVariant::rl_classical();
  std::vector<double> values;
  std::vector<bool> clipped(grid.n(), false);
  std::optional<double> theta;
  if (o.variant == "rl" || o.variant == "rl_truncated") {
    require(o.variant == "rl" || o.epsilon > 0.0, "rl_truncated needs --epsilon > 0");
    auto r = rl_derivative(f, alpha, rl_variant);
    values = r.values.data();
    clipped = r.clipped;
  } else if (o.variant == "caputo_left") {
    values = caputo_left(f, alpha, grid.a()).data();
  } else if (o.variant == "caputo_right") {
    values = caputo_right(f, alpha).data();
  } else if (o.variant == "hybrid") {
    auto r = adaptive_hybrid(f, alpha, rl_variant, o.theta);
    values = r.values.data();
    clipped = r.clipped;
    theta = r.theta;
  } else {
    throw PreconditionError("unknown derivative variant: " + o.variant);
  }
  double l1 = 0.0, sup = 0.0;
  std::size_t kept = 0;
  const auto w = grid.trapezoid_weights();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (clipped[i]) continue;
    ++kept;
    l1 += w[i] * std::abs(values[i]);
    sup = std::max(sup, std::abs(values[i]));
  }
  const long long n = static_cast<long long>(grid.n());
  CommandResult res;
  res.rows.push_back(row("deriv", o.variant + "_l1", 0, n, l1, cfg.seed));
  res.rows.push_back(row("deriv", o.variant + "_sup", 0, n, sup, cfg.seed));
  if (theta) res.rows.push_back(row("deriv", "theta", 0, n, *theta, cfg.seed));
  res.text = line("variant", o.variant) + line("n", n) + line("unclipped", kept) + line("l1", l1) +
             line("sup", sup);
  if (theta) res.text += "theta: " + g17(*theta) + "\n";
  if (o.print_values) {
    res.text += "x,value,clipped\n";
    for (std::size_t i = 0; i < values.size(); ++i)
      res.text += g17(grid.point(i)) + "," + g17(values[i]) + "," + (clipped[i] ? "1" : "0") + "\n";
  }
  return res;
}

CommandResult cmd_kernel(const KernelOptions& o, const RunConfig& cfg) {
  cfg.validate();
  CommandResult res;
  if (o.literal) {
    const double v = hadamard_kernel_literal(o.z, o.alpha, o.gamma);
    res.rows.push_back(row("kernel", "literal", 0, 0, v, cfg.seed));
    res.text = "literal: " + g17(v) + "\n";
    return res;
  }
  const auto est = hadamard_kernel(o.z, o.alpha, o.gamma, o.t, o.n_mc, cfg.seed);
  res.rows.push_back(row("kernel", "mean", 0, est.n_samples, est.mean, cfg.seed));
  res.rows.push_back(row("kernel", "stderr", 0, est.n_samples, est.stderr_, cfg.seed));
  res.text = line("mean", est.mean) + line("stderr", est.stderr_) + line("n", est.n_samples);
  return res;
}

CommandResult cmd_norms(const NormsOptions& o, const RunConfig& cfg) {
  cfg.validate();
  const Grid1D grid = build_grid(0.0, 1.0, static_cast<long long>(cfg.grid_n));
  const auto kind = parse_norm_kind(o.kind);
  NormReport rep{};
  if (kind == NormKind::penalty) {
    rep = anisotropic_penalty(OrderField::linear(grid, o.alpha, o.alpha1 < 0.0 ? o.alpha : o.alpha1));
  } else {
    const auto f = synth_function(o.func, grid, o.params, cfg.seed);
    switch (kind) {
      case NormKind::gagliardo: rep = gagliardo_seminorm(f, o.s, o.p); break;
      case NormKind::besov: rep = besov_norm(f, o.alpha, o.p); break;
      case NormKind::holder: rep = holder_seminorm(f, o.alpha); break;
      case NormKind::sobolev_spectral: rep = sobolev_norm_spectral(f, o.s); break;
      case NormKind::penalty: break;
    }
  }
  CommandResult res;
  res.rows.push_back(row("norms", std::string(to_string(rep.kind)), 0,
                         static_cast<long long>(rep.grid_n), rep.value, cfg.seed));
  res.text = line("kind", std::string(to_string(rep.kind))) + line("value", rep.value) +
             line("grid_n", rep.grid_n);
  return res;
}

CommandResult cmd_approx(const ApproxOptions& o, const RunConfig& cfg) {
  cfg.validate();
  require(o.levels >= 1 && o.levels <= 20, "levels must lie in [1, 20]");
  require(o.scale >= 0.0, "threshold scale must be >= 0");
  const Grid1D grid = build_grid(0.0, 1.0, 1LL << o.levels);
  const auto f = synth_function(o.func, grid, o.params, cfg.seed);
  const auto parts = split(o.alpha_spec, ':');
  std::optional<OrderField> alpha;
  if (parts[0] == "estimate" && parts.size() == 1) {
    alpha = local_order_estimate(f, o.window);
  } else if (parts[0] == "constant" && parts.size() == 2) {
    alpha = OrderField::constant(grid, to_real(parts[1]));
  } else if (parts[0] == "linear" && parts.size() == 3) {
    alpha = OrderField::linear(grid, to_real(parts[1]), to_real(parts[2]));
  } else {
    throw PreconditionError("alpha spec must be estimate, constant:v or linear:a:b");
  }
  const auto plan = threshold_plan(*alpha, o.eps);
  const auto result = adaptive_approx(f, plan.scaled(o.scale));
  const double b2 = error_bound_multilevel(plan, *alpha);
  const double beta = alpha->alpha0();
  const int N = static_cast<int>(std::ceil(1.0 / (2.0 * beta) - 1e-12));
  const double b1 = error_bound_uniform(static_cast<long long>(grid.n()), beta, N, o.eps, *alpha);
  const long long n = static_cast<long long>(grid.n());
  CommandResult res;
  res.rows.push_back(row("approx", "retained", 0, n, static_cast<double>(result.retained), cfg.seed));
  res.rows.push_back(row("approx", "measured_error", 0, n, result.measured_error, cfg.seed));
  res.rows.push_back(row("approx", "bound_multilevel", 0, n, b2, cfg.seed));
  res.rows.push_back(row("approx", "bound_uniform", 0, n, b1, cfg.seed));
  res.text = line("retained", result.retained) + line("measured_error", result.measured_error) +
             line("bound_multilevel", b2) + line("bound_uniform", b1);
  return res;
}

CommandResult cmd_prokhorov(const ProkhorovOptions& o, const RunConfig& cfg) {
  cfg.validate();
  const auto mu = DiscreteMeasure::parse(o.mu);
  const auto nu = DiscreteMeasure::parse(o.nu);
  const double d = frac_prokhorov(mu, nu, o.alpha, cfg.tolerance);
  CommandResult res;
  res.rows.push_back(row("prokhorov", "distance", 0,
                         static_cast<long long>(mu.size() + nu.size()), d, cfg.seed));
  res.text = "distance: " + g17(d) + "\n";
  return res;
}

CommandResult cmd_qfgd(const QfgdOptions& o, const RunConfig& cfg) {
  cfg.validate();
  LossSpec loss;
  loss.kind = parse_loss_kind(o.loss);
  loss.dim = o.dim;
  if (loss.kind == LossKind::multiscale_ripple) {
    loss.amplitudes = {0.05, 0.01};
    loss.frequencies = {2.0, 5.0};
  }
  loss.validate();
  const double start = o.w0.value_or(loss.kind == LossKind::rosenbrock ? 0.0 : 1.0);
  const std::vector<double> w0(o.dim, start);
  OptConfig oc;
  oc.eta = o.eta;
  oc.temperature = o.temperature;
  oc.alpha_order = o.alpha;
  oc.noise_index = o.noise_index;
  oc.stable_skew = o.skew;
  oc.max_iter = o.max_iter;
  oc.grad_tol = cfg.tolerance;
  oc.seed = cfg.seed;
  CommandResult res;
  auto emit = [&](const std::string& method, const OptTrace& t) {
    for (std::size_t i = 0; i < t.records.size(); ++i)
      res.rows.push_back(row("qfgd", method, static_cast<long long>(i), static_cast<long long>(o.dim),
                             t.records[i].error, cfg.seed));
    const auto& last = t.records.back();
    res.text += method + ": iterations " + std::to_string(t.records.size() - 1) + " loss " +
                g17(last.loss) + " grad_norm " + g17(last.grad_norm) + " error " + g17(last.error) +
                " converged " + (t.converged ? "yes" : "no") + "\n";
  };
  emit("qfgd", run_qfgd(loss, w0, oc));
  if (o.baselines) {
    const auto b = run_baselines(loss, w0, oc);
    emit("gd", b.gd);
    emit("fno_like", b.fno_like);
  }
  return res;
}

CommandResult cmd_elliptic(const EllipticOptions& o, const RunConfig& cfg) {
  cfg.validate();
  require(o.modes >= 1, "modes must be >= 1");
  require(static_cast<std::size_t>(o.modes) + 2 <= cfg.grid_n, "grid too coarse for the mode count");
  const Grid1D grid = build_grid(0.0, 1.0, static_cast<long long>(cfg.grid_n));
  Rng rng(cfg.seed);
  std::vector<double> amp(o.modes);
  for (int k = 0; k < o.modes; ++k) amp[k] = rng.normal() / (k + 1);
  std::vector<double> v(grid.n(), 0.0);
  for (std::size_t i = 1; i + 1 < grid.n(); ++i)
    for (int k = 0; k < o.modes; ++k) v[i] += amp[k] * std::sin((k + 1) * std::numbers::pi * grid.point(i));
  const SampledFn f(grid, std::move(v));
  const auto sol = solve_frac_poisson(f, o.alpha);
  const double ratio = regularity_ratio(f, o.alpha);
  const double bound = mode_regularity_ratio(1, o.alpha);
  const long long n = static_cast<long long>(grid.n());
  CommandResult res;
  res.rows.push_back(row("elliptic", "ratio", 0, n, ratio, cfg.seed));
  res.rows.push_back(row("elliptic", "bound_k1", 0, n, bound, cfg.seed));
  res.rows.push_back(row("elliptic", "residual", 0, n, sol.residual, cfg.seed));
  res.text = line("ratio", ratio) + line("bound_k1", bound) + line("residual", sol.residual);
  return res;
}

CommandResult cmd_bench_fig1(const RunConfig& cfg) {
  CommandResult res;
  res.rows = run_fig1(cfg);
  const auto a = method_errors(res.rows, "adaptive");
  const auto t = method_errors(res.rows, "traditional");
  res.text = line("adaptive_final", a.back()) + line("traditional_final", t.back()) +
             line("ratio", a.back() / t.back());
  return res;
}

CommandResult cmd_bench_fig2(const RunConfig& cfg, std::size_t dim) {
  CommandResult res;
  res.rows = run_fig2(cfg, dim);
  std::vector<double> its;
  for (int i = 1; i <= 7; ++i) its.push_back(i);
  for (const char* m : {"qfgd", "fno_like", "gd"}) {
    const auto e = method_errors(res.rows, m);
    res.text += std::string(m) + ": final " + g17(e.back()) + " slope " + g17(log_linear_slope(e, its)) + "\n";
  }
  return res;
}

}  // namespace fracnum
