#ifndef DEVMEAN_CLI_HPP
#define DEVMEAN_CLI_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace devmean::cli {

struct RunSpec {
  std::string command;        // mean | population-mean | constants | ld-rate |
                              // simulate | axioms | verify-paper
  std::string simulate_kind;  // slln | clt | lil | ld
  std::string deviation;      // registry string, e.g. "power:p=2"
  std::string distribution;   // registry string, e.g. "exponential:rate=1"
  std::vector<double> data;
  bool has_x = false;
  double x = 0.0;
  std::vector<long> n_list;
  int replications = 100;
  std::uint64_t seed = 0;
  long max_n = 100000;
  int threads = 0;
  std::string output;          // empty => stdout
  std::string format = "csv";  // csv | json
};

// Parses argv into a validated RunSpec; `--config file` supplies flat
// key=value defaults that explicit flags override.  Throws UsageError.
RunSpec parse_args(const std::vector<std::string>& args);

// Executes the run: 0 on success, 1 on computational error (machine-readable
// JSON object on stderr), 2 on usage error.
int run(const RunSpec& spec);

struct GoldenCheck {
  std::string id;
  double expected = 0.0;
  double computed = 0.0;
  double tolerance = 0.0;
  bool relative = false;
  std::string source;
  bool pass = false;
};

// The golden value suite; failures are data, not errors.
std::vector<GoldenCheck> verify_paper();

// Full entry point used by the binary: parse + run + error rendering.
int main_entry(int argc, const char* const* argv);

}  // namespace devmean::cli

#endif
