#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "fracnum/bench.hpp"
#include "fracnum/errors.hpp"
#include "fracnum/parallel.hpp"

using namespace fracnum;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  const auto d = fs::temp_directory_path() / "fracnum_cli_test";
  fs::create_directories(d);
  return d;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(FRACNUM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

RunConfig config(std::uint64_t seed) {
  RunConfig cfg;
  cfg.seed = seed;
  cfg.grid_n = 1024;
  return cfg;
}

}  // namespace

TEST_CASE("CSV formatting") {
  CHECK(format_csv({}) == std::string(kCsvHeader) + "\n");
  const std::vector<CsvRow> rows{{"fig1", "adaptive", 3, 1024, 0.1, 42}};
  CHECK(format_csv(rows) == "experiment,method,iteration,n,error,seed\nfig1,adaptive,3,1024,0.10000000000000001,42\n");
}

TEST_CASE("CSV round trip is bit exact") {
  std::vector<CsvRow> rows;
  const double vals[] = {0.0, 1.0 / 3.0, 1e-300, 6.02214076e23, std::numeric_limits<double>::denorm_min(),
                         std::nextafter(1.0, 2.0), 2.5};
  long long i = 0;
  for (double v : vals) rows.push_back({"exp", "m" + std::to_string(i), i, 10 * i, v, 7u + static_cast<std::uint64_t>(i)}), ++i;
  const auto path = scratch_dir() / "roundtrip.csv";
  emit_csv(rows, path.string());
  CHECK(read_csv(path.string()) == rows);
  const auto bytes = slurp(path);
  CHECK(bytes.find('\r') == std::string::npos);
  emit_csv(rows, path.string());
  CHECK(slurp(path) == bytes);
  CHECK_THROWS_AS(emit_csv(rows, "/nonexistent-dir/x.csv"), IoError);
  CHECK_THROWS_AS(parse_csv("wrong,header\n"), PreconditionError);
  CHECK_THROWS_AS(format_csv({{"e", "m", 0, 1, -1.0, 1}}), PreconditionError);
}

TEST_CASE("decay fit") {
  std::vector<double> ns{1, 2, 3, 4, 5, 8, 16}, e;
  for (double n : ns) e.push_back(std::pow(n, -1.5));
  const auto f = fit_decay(e, ns, 0.5);
  CHECK(std::abs(f.rate - 1.5) <= 1e-10);
  CHECK(std::abs(f.prefactor - 1.0) <= 1e-10);
  CHECK(f.target_rate == 1.5);
  // least squares over the published adaptive curve of the refinement figure
  const auto fig = fit_decay({0.5, 0.3, 0.15, 0.08, 0.04}, {1, 2, 3, 4, 5}, 0.5);
  CHECK(fig.rate == doctest::Approx(1.527268877138533).epsilon(1e-12));
  CHECK(fig.prefactor == doctest::Approx(0.6405606566318979).epsilon(1e-12));
  CHECK_THROWS_AS(fit_decay({1.0, 0.0, 0.5}, {1, 2, 3}, 0.5), PreconditionError);
  CHECK_THROWS_AS(fit_decay({1.0, 0.5}, {1, 2}, 0.5), PreconditionError);
  CHECK(log_linear_slope({1.0, std::exp(-0.5), std::exp(-1.0)}, {0, 1, 2}) == doctest::Approx(-0.5));
}

TEST_CASE("refinement experiment shape") {
  const auto rows = run_fig1(config(3));
  REQUIRE(rows.size() == 10);
  for (const char* m : {"adaptive", "traditional"}) {
    const auto e = method_errors(rows, m);
    REQUIRE(e.size() == 5);
    for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i] < e[i - 1]);
    for (double v : e) CHECK(std::isfinite(v));
  }
  CHECK(format_csv(rows) == format_csv(run_fig1(config(3))));
  RunConfig bad = config(3);
  bad.grid_n = 1000;
  CHECK_THROWS_AS(run_fig1(bad), PreconditionError);
}

TEST_CASE("optimizer experiment shape") {
  const auto rows = run_fig2(config(4));
  REQUIRE(rows.size() == 21);
  const auto gd = method_errors(rows, "gd");
  REQUIRE(gd.size() == 7);
  for (std::size_t i = 1; i < gd.size(); ++i) CHECK(gd[i] < gd[i - 1]);
  for (const auto& r : rows) CHECK(std::isfinite(r.error));
  set_worker_count(4);
  const auto again = run_fig2(config(4));
  set_worker_count(1);
  CHECK(again == rows);
}

TEST_CASE("CLI exit codes") {
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("elliptic") == 0);
  CHECK(run_cli("deriv --alpha0 1.5") == 1);
  CHECK(run_cli("--tol -1 prokhorov --mu 0:1 --nu 1:1") == 1);
  CHECK(run_cli("prokhorov --mu 0:0.5 --nu 1:1") == 1);
  CHECK(run_cli("no-such-command") == 1);
  CHECK(run_cli("--out /nonexistent-dir/x.csv elliptic") == 2);
}

TEST_CASE("CLI output is deterministic across runs and workers") {
  const auto dir = scratch_dir();
  for (const std::string cmd : {"kernel --n-mc 20000", "qfgd --loss multiscale_ripple --T 0.01 --alpha 0.8 --N 20",
                                "bench fig2"}) {
    const auto a = dir / "a.csv", b = dir / "b.csv", c = dir / "c.csv";
    REQUIRE(run_cli("--workers 1 --out " + a.string() + " " + cmd) == 0);
    REQUIRE(run_cli("--workers 1 --out " + b.string() + " " + cmd) == 0);
    REQUIRE(run_cli("--workers 4 --out " + c.string() + " " + cmd) == 0);
    const auto bytes = slurp(a);
    CHECK(bytes.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
    CHECK(bytes == slurp(b));
    CHECK(bytes == slurp(c));
    REQUIRE(run_cli("--seed 7 --out " + b.string() + " " + cmd) == 0);
    CHECK(bytes != slurp(b));
  }
}
