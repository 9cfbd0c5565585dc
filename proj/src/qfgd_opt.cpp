#include "fracnum/qfgd_opt.hpp"

#include <cmath>
#include <numeric>

#include "fracnum/errors.hpp"
#include "fracnum/levy_stable.hpp"

namespace fracnum {

namespace {

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double center_at(const LossSpec& l, std::size_t i) { return l.center.empty() ? 0.0 : l.center[i]; }

// |d|^{1 - alpha} / Gamma(2 - alpha); 0^{1 - alpha} = 0 for alpha < 1.
double caputo_factor(double d, double alpha) {
  if (alpha == 1.0) return 1.0;
  return std::pow(std::abs(d), 1.0 - alpha) / std::tgamma(2.0 - alpha);
}

}  // namespace

LossKind parse_loss_kind(std::string_view name) {
  for (auto k : {LossKind::quadratic, LossKind::rosenbrock, LossKind::multiscale_ripple})
    if (to_string(k) == name) return k;
  throw PreconditionError("unknown loss: " + std::string(name));
}

std::string_view to_string(LossKind kind) {
  switch (kind) {
    case LossKind::quadratic: return "quadratic";
    case LossKind::rosenbrock: return "rosenbrock";
    case LossKind::multiscale_ripple: return "multiscale_ripple";
  }
  return "unknown";
}

void LossSpec::validate() const {
  require(dim >= 1, "loss: dim must be >= 1");
  require(center.empty() || center.size() == dim, "loss: center length must equal dim");
  require(curvature > 0.0 && std::isfinite(curvature), "loss: curvature must be positive");
  if (kind == LossKind::rosenbrock) require(dim >= 2, "rosenbrock needs dim >= 2");
  if (kind == LossKind::multiscale_ripple) {
    require(amplitudes.size() == frequencies.size() && !amplitudes.empty(),
            "ripple: amplitudes and frequencies must be non-empty and equal in length");
    double stiffness = 0.0;
    for (std::size_t m = 0; m < amplitudes.size(); ++m) {
      require(amplitudes[m] > 0.0, "ripple: amplitudes must be positive");
      require(std::isfinite(frequencies[m]), "ripple: frequencies must be finite");
      stiffness += amplitudes[m] * frequencies[m] * frequencies[m];
    }
    require(stiffness < curvature, "ripple: sum a_m omega_m^2 must stay below the curvature");
  }
}

double LossSpec::value(const std::vector<double>& w) const {
  require(w.size() == dim, "loss: point dimension mismatch");
  double v = 0.0;
  if (kind == LossKind::rosenbrock) {
    for (std::size_t i = 0; i + 1 < dim; ++i) {
      const double a = w[i + 1] - w[i] * w[i], b = 1.0 - w[i];
      v += 100.0 * a * a + b * b;
    }
    return v;
  }
  for (std::size_t i = 0; i < dim; ++i) {
    const double d = w[i] - center_at(*this, i);
    v += 0.5 * curvature * d * d;
    if (kind == LossKind::multiscale_ripple)
      for (std::size_t m = 0; m < amplitudes.size(); ++m)
        v += amplitudes[m] * (1.0 - std::cos(frequencies[m] * d));
  }
  return v;
}

std::vector<double> LossSpec::gradient(const std::vector<double>& w) const {
  require(w.size() == dim, "loss: point dimension mismatch");
  std::vector<double> g(dim, 0.0);
  if (kind == LossKind::rosenbrock) {
    for (std::size_t i = 0; i + 1 < dim; ++i) {
      const double a = w[i + 1] - w[i] * w[i];
      g[i] += -400.0 * w[i] * a - 2.0 * (1.0 - w[i]);
      g[i + 1] += 200.0 * a;
    }
    return g;
  }
  for (std::size_t i = 0; i < dim; ++i) {
    const double d = w[i] - center_at(*this, i);
    g[i] = curvature * d;
    if (kind == LossKind::multiscale_ripple)
      for (std::size_t m = 0; m < amplitudes.size(); ++m)
        g[i] += amplitudes[m] * frequencies[m] * std::sin(frequencies[m] * d);
  }
  return g;
}

std::vector<double> LossSpec::minimizer() const {
  if (kind == LossKind::rosenbrock) return std::vector<double>(dim, 1.0);
  return center.empty() ? std::vector<double>(dim, 0.0) : center;
}

void OptConfig::validate() const {
  require(eta > 0.0 && std::isfinite(eta), "eta must be positive");
  require(temperature >= 0.0 && std::isfinite(temperature), "temperature must be >= 0");
  require(alpha_order > 0.0 && alpha_order <= 1.0, "alpha_order must lie in (0, 1]");
  const double ni = effective_noise_index();
  require(ni > 0.0 && ni <= 2.0, "noise index must lie in (0, 2]");
  require(stable_skew >= -1.0 && stable_skew <= 1.0, "stable skew must lie in [-1, 1]");
  require(max_iter >= 0, "max_iter must be >= 0");
  require(grad_tol >= 0.0, "grad_tol must be >= 0");
  if (step_clip) require(*step_clip > 0.0 && std::isfinite(*step_clip), "step_clip must be positive");
  if (adaptive_order) {
    require(order_min > 0.0 && order_min <= alpha_order, "order_min must lie in (0, alpha_order]");
    require(order_step > 0.0, "order_step must be positive");
  }
}

std::vector<double> frac_gradient(const LossSpec& loss, const std::vector<double>& w,
                                  double alpha_order, const std::vector<double>& c) {
  require(alpha_order > 0.0 && alpha_order <= 1.0, "alpha_order must lie in (0, 1]");
  return frac_gradient(loss, w, std::vector<double>(w.size(), alpha_order), c);
}

std::vector<double> frac_gradient(const LossSpec& loss, const std::vector<double>& w,
                                  const std::vector<double>& orders, const std::vector<double>& c) {
  require(c.size() == w.size() && orders.size() == w.size(), "frac_gradient: length mismatch");
  auto g = loss.gradient(w);
  for (std::size_t i = 0; i < g.size(); ++i) {
    require(orders[i] > 0.0 && orders[i] <= 1.0, "frac_gradient: order must lie in (0, 1]");
    g[i] *= caputo_factor(w[i] - c[i], orders[i]);
  }
  return g;
}

std::vector<double> qfgd_step(const std::vector<double>& w, const LossSpec& loss,
                              const OptConfig& cfg, const std::vector<double>& ref, double clip,
                              StepState& state) {
  const std::size_t d = w.size();
  if (state.orders.size() != d) {
    state.orders.assign(d, cfg.alpha_order);
    state.last_sign.assign(d, 0);
  }
  if (cfg.adaptive_order) {
    const auto plain = loss.gradient(w);
    for (std::size_t i = 0; i < d; ++i) {
      const int sign = (plain[i] > 0.0) - (plain[i] < 0.0);
      if (sign != state.last_sign[i]) {
        state.orders[i] = cfg.alpha_order;
      } else {
        const double lower = std::max(cfg.order_min, state.orders[i] - cfg.order_step);
        const double dist = w[i] - ref[i];
        if (caputo_factor(dist, lower) > caputo_factor(dist, state.orders[i])) state.orders[i] = lower;
      }
      state.last_sign[i] = sign;
    }
  }
  const auto g = frac_gradient(loss, w, state.orders, ref);
  std::vector<double> step(d);
  for (std::size_t i = 0; i < d; ++i) step[i] = -cfg.eta * g[i];
  if (cfg.temperature > 0.0) {
    const StableParams noise{cfg.effective_noise_index(), cfg.stable_skew, 1.0, 0.0};
    const double amp = std::sqrt(2.0 * cfg.eta * cfg.temperature);
    for (std::size_t i = 0; i < d; ++i) step[i] += amp * draw_stable(noise, state.rng);
  }
  const double len = norm2(step);
  const double shrink = len > clip ? clip / len : 1.0;
  std::vector<double> out(d);
  for (std::size_t i = 0; i < d; ++i) out[i] = w[i] + shrink * step[i];
  return out;
}

namespace {

OptRecord make_record(const LossSpec& loss, const std::vector<double>& w,
                      const std::vector<double>& wstar) {
  double err = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) err += (w[i] - wstar[i]) * (w[i] - wstar[i]);
  return {w, loss.value(w), norm2(loss.gradient(w)), std::sqrt(err)};
}

}  // namespace

OptTrace run_qfgd(const LossSpec& loss, const std::vector<double>& w0, const OptConfig& cfg) {
  loss.validate();
  cfg.validate();
  require(w0.size() == loss.dim, "initial point dimension mismatch");
  const auto ref = cfg.ref_point.empty() ? w0 : cfg.ref_point;
  require(ref.size() == loss.dim, "reference point dimension mismatch");
  double clip;
  if (cfg.step_clip) {
    clip = *cfg.step_clip;
  } else {
    const double g0 = norm2(loss.gradient(w0));
    clip = 10.0 * cfg.eta * (g0 > 0.0 ? g0 : 1.0);
  }
  const auto wstar = loss.minimizer();
  StepState state(cfg.seed);
  OptTrace trace;
  auto w = w0;
  trace.records.push_back(make_record(loss, w, wstar));
  for (int it = 0; it < cfg.max_iter; ++it) {
    if (trace.records.back().grad_norm < cfg.grad_tol) {
      trace.converged = true;
      break;
    }
    w = qfgd_step(w, loss, cfg, ref, clip, state);
    for (double x : w) require(std::isfinite(x), "optimizer produced a non-finite iterate");
    trace.records.push_back(make_record(loss, w, wstar));
  }
  if (!trace.converged && trace.records.back().grad_norm < cfg.grad_tol) trace.converged = true;
  return trace;
}

Baselines run_baselines(const LossSpec& loss, const std::vector<double>& w0, const OptConfig& cfg) {
  OptConfig gd = cfg;
  gd.alpha_order = 1.0;
  gd.temperature = 0.0;
  gd.adaptive_order = false;
  gd.noise_index.reset();
  OptConfig fno = cfg;
  fno.temperature = 0.0;
  fno.adaptive_order = false;
  return {run_qfgd(loss, w0, gd), run_qfgd(loss, w0, fno)};
}

}  // namespace fracnum
