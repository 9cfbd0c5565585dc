#pragma once

// Subcommand implementations shared by the command-line tool and the tests.
// Each returns CSV rows plus a human-readable report.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracnum/bench.hpp"
#include "fracnum/core_model.hpp"

namespace fracnum {

struct CommandResult {
  std::vector<CsvRow> rows;
  std::string text;
};

/// "key=value" pairs to a parameter map.
ParamMap parse_params(const std::vector<std::string>& items);

struct DerivOptions {
  std::string func = "sine";
  ParamMap params;
  double alpha0 = 0.5;
  double alpha1 = 0.5;
  std::string variant = "hybrid";  // rl, rl_truncated, caputo_left, caputo_right, hybrid
  double epsilon = 0.0;            // truncation window; 0 selects the classical RL
  std::optional<double> theta;
  bool print_values = false;
};
CommandResult cmd_deriv(const DerivOptions& o, const RunConfig& cfg);

struct KernelOptions {
  double z = 1.0;
  double alpha = 0.5;
  double gamma = 0.5;
  double t = 1.0;
  long long n_mc = 100000;
  bool literal = false;
};
CommandResult cmd_kernel(const KernelOptions& o, const RunConfig& cfg);

struct NormsOptions {
  std::string kind = "gagliardo";
  std::string func = "sine";
  ParamMap params;
  double s = 0.5;
  double p = 2.0;
  double alpha = 0.5;
  double alpha1 = -1.0;  // penalty: right end of the linear order ramp (default: alpha)
};
CommandResult cmd_norms(const NormsOptions& o, const RunConfig& cfg);

struct ApproxOptions {
  std::string func = "weierstrass_varH";
  ParamMap params{{"H0", 0.3}, {"H1", 0.7}};
  std::string alpha_spec = "estimate";  // estimate | constant:v | linear:a:b
  double eps = 0.0;
  int levels = 10;
  double scale = 1.0;
  int window = 32;
};
CommandResult cmd_approx(const ApproxOptions& o, const RunConfig& cfg);

struct ProkhorovOptions {
  std::string mu;
  std::string nu;
  double alpha = 1.0;
};
CommandResult cmd_prokhorov(const ProkhorovOptions& o, const RunConfig& cfg);

struct QfgdOptions {
  std::string loss = "quadratic";
  std::size_t dim = 2;
  double eta = 0.1;
  double temperature = 0.0;
  double alpha = 1.0;
  std::optional<double> noise_index;
  double skew = 0.0;
  int max_iter = 100;
  std::optional<double> w0;
  bool baselines = false;
};
CommandResult cmd_qfgd(const QfgdOptions& o, const RunConfig& cfg);

struct EllipticOptions {
  double alpha = 0.5;
  int modes = 8;
};
CommandResult cmd_elliptic(const EllipticOptions& o, const RunConfig& cfg);

CommandResult cmd_bench_fig1(const RunConfig& cfg);
CommandResult cmd_bench_fig2(const RunConfig& cfg, std::size_t dim = 8);

}  // namespace fracnum
