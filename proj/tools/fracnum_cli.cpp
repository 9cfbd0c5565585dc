// Command-line front end. Exit codes: 0 success, 1 invalid input, 2 I/O failure.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fracnum/commands.hpp"
#include "fracnum/errors.hpp"
#include "fracnum/parallel.hpp"

using namespace fracnum;

int main(int argc, char** argv) {
  CLI::App app{"Variable-order fractional calculus toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  unsigned workers = 1;
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--out,--csv", cfg.output_path, "Write result rows as CSV to this path");
  app.add_option("--grid-n", cfg.grid_n, "Grid points")->capture_default_str();
  app.add_option("--tol", cfg.tolerance, "Tolerance")->capture_default_str();
  app.add_option("--workers", workers, "Worker threads")->capture_default_str()->check(CLI::Range(1U, 256U));

  std::vector<std::string> params;

  DerivOptions deriv;
  auto* d = app.add_subcommand("deriv", "Fractional derivative of a catalog function");
  d->add_option("--func", deriv.func)->capture_default_str();
  d->add_option("--param", params, "Catalog parameter key=value (repeatable)");
  d->add_option("--alpha0", deriv.alpha0, "Order at the left end")->capture_default_str();
  d->add_option("--alpha1", deriv.alpha1, "Order at the right end")->capture_default_str();
  d->add_option("--variant", deriv.variant, "rl | rl_truncated | caputo_left | caputo_right | hybrid")
      ->capture_default_str();
  d->add_option("--epsilon", deriv.epsilon, "Truncation window (0 = classical RL)")->capture_default_str();
  std::optional<double> theta;
  d->add_option("--theta", theta, "Fixed blend weight for the hybrid");
  d->add_flag("--values", deriv.print_values, "Print pointwise values");

  KernelOptions kernel;
  auto* k = app.add_subcommand("kernel", "Monte Carlo subordinated Hadamard kernel");
  k->add_option("--z", kernel.z)->capture_default_str();
  k->add_option("--alpha", kernel.alpha)->capture_default_str();
  k->add_option("--gamma", kernel.gamma)->capture_default_str();
  k->add_option("--t", kernel.t)->capture_default_str();
  k->add_option("--n-mc", kernel.n_mc)->capture_default_str();
  k->add_flag("--literal", kernel.literal, "Deterministic quadrature over the Levy measure");

  NormsOptions norms;
  auto* nm = app.add_subcommand("norms", "Fractional norm estimators");
  nm->add_option("--kind", norms.kind, "gagliardo | besov | holder | sobolev_spectral | penalty")
      ->capture_default_str();
  nm->add_option("--func", norms.func)->capture_default_str();
  nm->add_option("--param", params, "Catalog parameter key=value (repeatable)");
  nm->add_option("--s", norms.s)->capture_default_str();
  nm->add_option("--p", norms.p)->capture_default_str();
  nm->add_option("--alpha", norms.alpha)->capture_default_str();
  nm->add_option("--alpha1", norms.alpha1, "Penalty: order at the right end");

  ApproxOptions approx;
  auto* ap = app.add_subcommand("approx", "Adaptive Haar approximation and bounds");
  ap->add_option("--func", approx.func)->capture_default_str();
  ap->add_option("--param", params, "Catalog parameter key=value (repeatable)");
  ap->add_option("--alpha-spec", approx.alpha_spec, "estimate | constant:v | linear:a:b")
      ->capture_default_str();
  ap->add_option("--eps", approx.eps)->capture_default_str();
  ap->add_option("--levels", approx.levels, "Grid has 2^levels points")->capture_default_str();
  ap->add_option("--scale", approx.scale, "Threshold multiplier")->capture_default_str();
  ap->add_option("--window", approx.window, "Order-estimate window")->capture_default_str();

  ProkhorovOptions prok;
  auto* pr = app.add_subcommand("prokhorov", "Fractional Prokhorov distance");
  pr->add_option("--mu", prok.mu, "atom:weight,...")->required();
  pr->add_option("--nu", prok.nu, "atom:weight,...")->required();
  pr->add_option("--alpha", prok.alpha)->capture_default_str();

  QfgdOptions qf;
  auto* q = app.add_subcommand("qfgd", "Fractional gradient descent with stable noise");
  q->add_option("--loss", qf.loss, "quadratic | rosenbrock | multiscale_ripple")->capture_default_str();
  q->add_option("--dim", qf.dim)->capture_default_str();
  q->add_option("--eta", qf.eta)->capture_default_str();
  q->add_option("--T", qf.temperature)->capture_default_str();
  q->add_option("--alpha", qf.alpha)->capture_default_str();
  q->add_option("--noise-index", qf.noise_index);
  q->add_option("--skew", qf.skew)->capture_default_str();
  q->add_option("--N", qf.max_iter)->capture_default_str();
  q->add_option("--w0", qf.w0, "Initial value for every coordinate");
  q->add_flag("--baselines", qf.baselines, "Also run gd and fno_like");

  EllipticOptions el;
  auto* e = app.add_subcommand("elliptic", "Spectral fractional Poisson solve");
  e->add_option("--alpha", el.alpha)->capture_default_str();
  e->add_option("--modes", el.modes)->capture_default_str();

  auto* bench = app.add_subcommand("bench", "Convergence experiments");
  bench->require_subcommand(1);
  auto* fig1 = bench->add_subcommand("fig1", "Adaptive vs traditional wavelet refinement");
  std::size_t fig2_dim = 8;
  auto* fig2 = bench->add_subcommand("fig2", "Optimizer comparison");
  fig2->add_option("--dim", fig2_dim)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 1;
  }

  try {
    set_worker_count(workers);
    CommandResult res;
    if (*d) {
      deriv.params = parse_params(params);
      deriv.theta = theta;
      res = cmd_deriv(deriv, cfg);
    } else if (*k) {
      res = cmd_kernel(kernel, cfg);
    } else if (*nm) {
      norms.params = parse_params(params);
      res = cmd_norms(norms, cfg);
    } else if (*ap) {
      if (!params.empty()) approx.params = parse_params(params);
      res = cmd_approx(approx, cfg);
    } else if (*pr) {
      res = cmd_prokhorov(prok, cfg);
    } else if (*q) {
      res = cmd_qfgd(qf, cfg);
    } else if (*e) {
      res = cmd_elliptic(el, cfg);
    } else if (*fig1) {
      res = cmd_bench_fig1(cfg);
    } else if (*fig2) {
      res = cmd_bench_fig2(cfg, fig2_dim);
    }
    std::cout << res.text;
    if (!cfg.output_path.empty()) emit_csv(res.rows, cfg.output_path);
  } catch (const IoError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
