#include "fracnum/bench.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "fracnum/errors.hpp"
#include "fracnum/multiscale_approx.hpp"
#include "fracnum/qfgd_opt.hpp"
#include "fracnum/rng.hpp"

namespace fracnum {

namespace {

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void check_field(const std::string& s, const char* what) {
  require(s.find_first_of(",\n\r\"") == std::string::npos,
          std::string("csv: ") + what + " must not contain separators or quotes");
}

double rel_l2(const SampledFn& f, const SampledFn& g) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    num += (f[i] - g[i]) * (f[i] - g[i]);
    den += f[i] * f[i];
  }
  return std::sqrt(num / den);
}

}  // namespace

std::string format_csv(const std::vector<CsvRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    check_field(r.experiment, "experiment");
    check_field(r.method, "method");
    require(std::isfinite(r.error) && r.error >= 0.0, "csv: error must be finite and >= 0");
    out += r.experiment + ',' + r.method + ',' + std::to_string(r.iteration) + ',' +
           std::to_string(r.n) + ',' + format_real(r.error) + ',' + std::to_string(r.seed) + '\n';
  }
  return out;
}

void emit_csv(const std::vector<CsvRow>& rows, const std::string& path) {
  const auto text = format_csv(rows);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  require(std::getline(in, line) && line == kCsvHeader, "csv: missing or wrong header");
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    require(f.size() == 6, "csv: expected 6 fields in '" + line + "'");
    CsvRow r;
    r.experiment = f[0];
    r.method = f[1];
    auto parse = [&](const std::string& s, auto& v) {
      const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      require(res.ec == std::errc() && res.ptr == s.data() + s.size(), "csv: bad number '" + s + "'");
    };
    parse(f[2], r.iteration);
    parse(f[3], r.n);
    parse(f[4], r.error);
    parse(f[5], r.seed);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<CsvRow> read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

std::vector<CsvRow> run_fig1(const RunConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.grid_n;
  require(n >= 64 && (n & (n - 1)) == 0, "fig1: grid size must be a power of two >= 64");
  const Grid1D grid(0.0, 1.0, n);
  const double levels = std::log2(static_cast<double>(n));
  const auto f = synth_function(CatalogId::weierstrass_varH, grid,
                                {{"H0", 0.3}, {"H1", 0.7}, {"J", levels}}, cfg.seed);
  const auto estimated = local_order_estimate(f, kFig1Window);
  const auto adaptive = threshold_plan(estimated, 0.0);
  const auto traditional = threshold_plan(OrderField::constant(grid, 0.5), 0.0);

  std::vector<CsvRow> rows;
  for (const auto& [name, plan] : {std::pair{"adaptive", &adaptive}, std::pair{"traditional", &traditional}}) {
    for (int L = 1; L <= 5; ++L) {
      const auto res = adaptive_approx(f, plan->scaled(std::exp2(-L)));
      rows.push_back({"fig1", name, L, static_cast<long long>(n), rel_l2(f, res.approx), cfg.seed});
    }
  }
  return rows;
}

std::vector<CsvRow> run_fig2(const RunConfig& cfg, std::size_t dim) {
  cfg.validate();
  require(dim >= 1, "fig2: dim must be >= 1");
  LossSpec loss;
  loss.kind = LossKind::multiscale_ripple;
  loss.dim = dim;
  loss.center.assign(dim, 3.0);
  loss.curvature = 1.0;
  loss.amplitudes = {0.05, 0.01};
  loss.frequencies = {2.0, 5.0};

  Rng rng(cfg.seed);
  std::vector<double> w0(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double offset = rng.uniform(0.5, 1.5);
    const double sign = (rng.next_u64() & 1U) ? 1.0 : -1.0;
    w0[i] = loss.center[i] + sign * offset;
  }

  OptConfig qcfg;
  qcfg.eta = 0.2;
  qcfg.temperature = 1e-6;
  qcfg.alpha_order = 0.8;
  qcfg.ref_point.assign(dim, 0.0);
  qcfg.max_iter = 7;
  qcfg.grad_tol = 0.0;
  qcfg.seed = substream_seed(cfg.seed, 1);
  qcfg.adaptive_order = true;
  qcfg.order_min = 0.3;
  qcfg.order_step = 0.15;

  const auto q = run_qfgd(loss, w0, qcfg);
  const auto base = run_baselines(loss, w0, qcfg);
  const double e0 = q.records.front().error;
  require(e0 > 0.0, "fig2: initial point coincides with the minimizer");

  std::vector<CsvRow> rows;
  for (const auto& [name, trace] :
       {std::pair{"qfgd", &q}, std::pair{"fno_like", &base.fno_like}, std::pair{"gd", &base.gd}}) {
    for (std::size_t it = 1; it < trace->records.size(); ++it)
      rows.push_back({"fig2", name, static_cast<long long>(it), static_cast<long long>(dim),
                      trace->records[it].error / e0, cfg.seed});
  }
  return rows;
}

DecayFit fit_decay(const std::vector<double>& errors, const std::vector<double>& ns, double alpha) {
  require(errors.size() >= 3 && errors.size() == ns.size(), "fit_decay needs >= 3 paired points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    require(errors[i] > 0.0 && std::isfinite(errors[i]), "fit_decay: errors must be positive");
    require(ns[i] > 0.0, "fit_decay: n must be positive");
    lx.push_back(std::log(ns[i]));
    ly.push_back(std::log(errors[i]));
  }
  const auto fit = least_squares(lx, ly);
  return {-fit.slope, std::exp(fit.intercept), 2.0 - alpha};
}

double log_linear_slope(const std::vector<double>& errors, const std::vector<double>& iterations) {
  require(errors.size() >= 2 && errors.size() == iterations.size(), "slope needs paired points");
  std::vector<double> ly;
  for (double e : errors) {
    require(e > 0.0, "slope: errors must be positive");
    ly.push_back(std::log(e));
  }
  return least_squares(iterations, ly).slope;
}

std::vector<double> method_errors(const std::vector<CsvRow>& rows, const std::string& method) {
  std::vector<double> out;
  for (const auto& r : rows)
    if (r.method == method) out.push_back(r.error);
  return out;
}

}  // namespace fracnum
