#pragma once

// Convergence experiments and CSV output.

#include <cstdint>
#include <string>
#include <vector>

#include "fracnum/core_model.hpp"

namespace fracnum {

inline constexpr const char* kCsvHeader = "experiment,method,iteration,n,error,seed";

struct CsvRow {
  std::string experiment;
  std::string method;
  long long iteration = 0;
  long long n = 0;
  double error = 0.0;
  std::uint64_t seed = 0;

  bool operator==(const CsvRow&) const = default;
};

/// Header plus one line per row, LF endings, reals with 17 significant digits.
std::string format_csv(const std::vector<CsvRow>& rows);
void emit_csv(const std::vector<CsvRow>& rows, const std::string& path);
std::vector<CsvRow> parse_csv(const std::string& text);
std::vector<CsvRow> read_csv(const std::string& path);

/// Wavelet refinement experiment on the variable-exponent surrogate
/// (H ramp 0.3 -> 0.7, cfg.grid_n points, a power of two). "adaptive" derives
/// thresholds from the estimated local order, "traditional" from the constant
/// mean exponent; level L = 1..5 scales every threshold by 2^{-L}. Errors are
/// relative L2.
std::vector<CsvRow> run_fig1(const RunConfig& cfg);

inline constexpr int kFig1Window = 32;

/// Optimizer comparison on the rippled bowl: fractional descent with noise and
/// order adaptation ("qfgd"), fixed-order fractional descent ("fno_like") and
/// plain descent ("gd"), 7 iterations each. Error = |w - w*| / |w0 - w*|.
std::vector<CsvRow> run_fig2(const RunConfig& cfg, std::size_t dim = 8);

struct DecayFit {
  double rate;         // -slope of log e against log n
  double prefactor;    // exp(intercept)
  double target_rate;  // 2 - alpha
};

DecayFit fit_decay(const std::vector<double>& errors, const std::vector<double>& ns, double alpha);

/// Least-squares slope of log e against the iteration index (negative for decay).
double log_linear_slope(const std::vector<double>& errors, const std::vector<double>& iterations);

/// Rows of one method in input order.
std::vector<double> method_errors(const std::vector<CsvRow>& rows, const std::string& method);

}  // namespace fracnum
