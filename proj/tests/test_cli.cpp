#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "devmean/cli.hpp"
#include "devmean/errors.hpp"

using namespace devmean;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path temp_file(const std::string& stem) {
  return fs::temp_directory_path() / ("devmean_test_" + stem);
}

// Runs the command with output redirected to a temp file; returns the exit
// code and the captured report.
std::pair<int, std::string> run_captured(std::vector<std::string> args,
                                         const std::string& stem) {
  auto path = temp_file(stem);
  args.push_back("--output");
  args.push_back(path.string());
  auto spec = cli::parse_args(args);
  int rc = cli::run(spec);
  std::string out = slurp(path);
  std::error_code ec;
  fs::remove(path, ec);
  return {rc, out};
}

// Splits a two-line CSV report into header -> value.
std::vector<std::pair<std::string, std::string>> csv_row(
    const std::string& text) {
  std::istringstream is(text);
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  std::vector<std::string> keys, vals;
  for (auto* s : {&header, &row}) {
    std::istringstream ls(*s);
    std::string tok;
    auto& dst = (s == &header) ? keys : vals;
    while (std::getline(ls, tok, ',')) dst.push_back(tok);
  }
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < keys.size() && i < vals.size(); ++i)
    out.emplace_back(keys[i], vals[i]);
  return out;
}

std::string find_col(const std::string& text, const std::string& key) {
  for (const auto& [k, v] : csv_row(text))
    if (k == key) return v;
  return {};
}

}  // namespace

TEST_CASE("argument parsing fills the run spec") {
  auto spec = cli::parse_args({"mean", "--deviation", "power:p=2", "--data",
                               "1,3", "--format", "json"});
  CHECK(spec.command == "mean");
  CHECK(spec.deviation == "power:p=2");
  REQUIRE(spec.data.size() == 2);
  CHECK(spec.data[1] == 3.0);
  CHECK(spec.format == "json");
  CHECK_FALSE(spec.has_x);

  auto sim = cli::parse_args({"simulate", "clt", "--deviation", "linear",
                              "--distribution", "exponential:rate=1", "--n",
                              "500", "--replications", "50", "--seed", "9"});
  CHECK(sim.simulate_kind == "clt");
  REQUIRE(sim.n_list.size() == 1);
  CHECK(sim.n_list[0] == 500);
  CHECK(sim.seed == 9);

  auto ld = cli::parse_args({"ld-rate", "--deviation", "linear",
                             "--distribution", "bernoulli:p=0.5", "--x",
                             "0.75"});
  CHECK(ld.has_x);
  CHECK(ld.x == 0.75);

  CHECK_THROWS_AS(cli::parse_args({"frobnicate"}), UsageError);
  CHECK_THROWS_AS(cli::parse_args({"simulate"}), UsageError);
  CHECK_THROWS_AS(cli::parse_args({"mean", "--format", "xml"}), UsageError);
  CHECK(cli::parse_args({"--help"}).command == "help");
}

TEST_CASE("config files supply defaults that flags override") {
  auto cfg = temp_file("config.ini");
  {
    std::ofstream out(cfg);
    out << "format=json\nseed=7\nreplications=42\n";
  }
  auto spec = cli::parse_args({"population-mean", "--config", cfg.string()});
  CHECK(spec.format == "json");
  CHECK(spec.seed == 7);
  CHECK(spec.replications == 42);

  auto over = cli::parse_args(
      {"population-mean", "--config", cfg.string(), "--format", "csv"});
  CHECK(over.format == "csv");
  CHECK(over.seed == 7);
  std::error_code ec;
  fs::remove(cfg, ec);
}

TEST_CASE("sample-mean command emits a bit-exact CSV scalar") {
  auto [rc, out] = run_captured(
      {"mean", "--deviation", "quadratic-example", "--data", "1,2"}, "mean");
  CHECK(rc == 0);
  std::string tok = find_col(out, "root");
  REQUIRE_FALSE(tok.empty());
  double root = std::stod(tok);
  CHECK(root == doctest::Approx(-0.75 + std::sqrt(5.5625)).epsilon(1e-10));
  // 17 significant digits survive a parse/format round trip unchanged.
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", root);
  CHECK(tok == buf);
  CHECK(find_col(out, "converged") == "1");
}

TEST_CASE("population-mean command exit codes and JSON output") {
  auto [rc, out] = run_captured(
      {"population-mean", "--deviation", "power:p=2", "--distribution",
       "exponential:rate=1", "--format", "json"},
      "pop");
  CHECK(rc == 0);
  auto j = nlohmann::json::parse(out);
  CHECK(j["t0"].get<double>() == doctest::Approx(1.300075).epsilon(1e-5));
  CHECK(j["probe_verdict"] == "finite");

  auto [rc_err, out_err] = run_captured(
      {"population-mean", "--deviation", "ex1v", "--distribution",
       "shifted-lognormal"},
      "noroot");
  CHECK(rc_err == 1);
  CHECK(out_err.empty());

  auto [rc_usage, out_usage] =
      run_captured({"mean", "--deviation", "power:p=2"}, "usage");
  CHECK(rc_usage == 2);
  CHECK(out_usage.empty());

  // Malformed registry parameter lists are usage errors, not crashes.
  auto [rc_reg, out_reg] = run_captured(
      {"population-mean", "--deviation", "power:p", "--distribution",
       "exponential:rate=1"},
      "registry");
  CHECK(rc_reg == 2);
}

TEST_CASE("nested generator parameters pass through the registry grammar") {
  auto [rc, out] = run_captured(
      {"mean", "--deviation", "baj:f=affine(2,1),p=one", "--data", "1,2,3"},
      "baj");
  CHECK(rc == 0);
  // Unit weight and affine generator: the plain arithmetic mean.
  CHECK(std::stod(find_col(out, "root")) == doctest::Approx(2.0));
}

TEST_CASE("simulation and diagnostic commands produce their schemas") {
  auto [rc, out] = run_captured(
      {"simulate", "slln", "--deviation", "linear", "--distribution",
       "pointmass:v=2", "--n-list", "10,20", "--replications", "3"},
      "slln");
  CHECK(rc == 0);
  CHECK(out.rfind("t0,n,mean_abs_error", 0) == 0);
  CHECK(find_col(out, "mean_abs_error") == "0");

  auto [rc_ax, out_ax] =
      run_captured({"axioms", "--deviation", "linear"}, "axioms");
  CHECK(rc_ax == 0);
  CHECK(find_col(out_ax, "pass") == "1");
}

TEST_CASE("golden value suite passes in full") {
  auto checks = cli::verify_paper();
  CHECK(checks.size() >= 15);
  for (const auto& c : checks) {
    INFO(c.id << ": expected " << c.expected << ", computed " << c.computed);
    CHECK(c.pass);
  }
}
