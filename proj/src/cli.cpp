#include "devmean/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "devmean/asymptotics.hpp"
#include "devmean/deviations.hpp"
#include "devmean/distribution.hpp"
#include "devmean/errors.hpp"
#include "devmean/montecarlo.hpp"
#include "devmean/population.hpp"

namespace devmean::cli {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// "name" or "name:key=value,key=value"; commas inside parentheses belong to
// the value (e.g. f=affine(2,1)).
void parse_registry(const std::string& s, std::string& name,
                    std::map<std::string, std::string>& params) {
  auto colon = s.find(':');
  name = s.substr(0, colon);
  if (name.empty()) throw UsageError("empty registry name in: " + s);
  if (colon == std::string::npos) return;
  std::string rest = s.substr(colon + 1);
  int depth = 0;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    std::string tok = rest.substr(start, end - start);
    auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0)
      throw UsageError("expected key=value, got: " + tok);
    params[tok.substr(0, eq)] = tok.substr(eq + 1);
  };
  for (std::size_t i = 0; i < rest.size(); ++i) {
    char c = rest[i];
    if (c == '(') ++depth;
    else if (c == ')') --depth;
    else if (c == ',' && depth == 0) {
      flush(i);
      start = i + 1;
    }
  }
  flush(rest.size());
}

Deviation deviation_from(const RunSpec& spec) {
  if (spec.deviation.empty()) throw UsageError("--deviation is required");
  std::string name;
  std::map<std::string, std::string> params;
  parse_registry(spec.deviation, name, params);
  return make_deviation(name, params);
}

DistributionSpec distribution_from(const RunSpec& spec) {
  if (spec.distribution.empty())
    throw UsageError("--distribution is required");
  std::string name;
  std::map<std::string, std::string> params;
  parse_registry(spec.distribution, name, params);
  return make_distribution(name, params);
}

ExperimentConfig experiment_from(const RunSpec& spec) {
  ExperimentConfig cfg;
  cfg.n_list = spec.n_list;
  cfg.replications = spec.replications;
  cfg.seed = spec.seed;
  cfg.max_n = spec.max_n;
  cfg.threads = spec.threads;
  return cfg;
}

void write_out(const RunSpec& spec, const std::string& content) {
  if (spec.output.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(spec.output);
  if (!out) throw UsageError("cannot open output file: " + spec.output);
  out << content;
}

// A report is an ordered list of named columns of equal length; scalars are
// one-row tables.  CSV prints 17-significant-digit decimals so that
// re-parsing reproduces the values bit-exactly.
struct Report {
  std::vector<std::pair<std::string, std::vector<std::string>>> columns;

  void scalar(const std::string& key, double v) { column(key, {fmt17(v)}); }
  void scalar(const std::string& key, const std::string& v) {
    column(key, {v});
  }
  void column(const std::string& key, std::vector<std::string> vals) {
    columns.emplace_back(key, std::move(vals));
  }
  void numeric(const std::string& key, const std::vector<double>& vals) {
    std::vector<std::string> out;
    out.reserve(vals.size());
    for (double v : vals) out.push_back(fmt17(v));
    column(key, std::move(out));
  }

  std::string csv() const {
    std::ostringstream os;
    std::size_t rows = 0;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      os << (i ? "," : "") << columns[i].first;
      rows = std::max(rows, columns[i].second.size());
    }
    os << "\n";
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t i = 0; i < columns.size(); ++i) {
        os << (i ? "," : "");
        const auto& col = columns[i].second;
        // Constant columns repeat their value on every row.
        if (col.size() == 1) os << col[0];
        else if (r < col.size()) os << col[r];
      }
      os << "\n";
    }
    return os.str();
  }

  std::string to_json() const {
    json j;
    for (const auto& [key, vals] : columns) {
      auto parse = [](const std::string& s) -> json {
        try {
          std::size_t pos = 0;
          double v = std::stod(s, &pos);
          if (pos == s.size()) return v;
        } catch (...) {
        }
        return s;
      };
      if (vals.size() == 1) j[key] = parse(vals[0]);
      else {
        json arr = json::array();
        for (const auto& v : vals) arr.push_back(parse(v));
        j[key] = arr;
      }
    }
    return j.dump() + "\n";
  }

  void emit(const RunSpec& spec) const {
    write_out(spec, spec.format == "json" ? to_json() : csv());
  }
};

std::vector<double> require_data(const RunSpec& spec) {
  if (spec.data.empty()) throw UsageError("--data is required");
  return spec.data;
}

int run_mean(const RunSpec& spec) {
  auto dev = deviation_from(spec);
  auto r = deviation_mean(dev, require_data(spec));
  Report rep;
  rep.scalar("root", r.root);
  rep.scalar("residual", r.residual);
  rep.column("iterations", {std::to_string(r.iterations)});
  rep.column("converged", {r.converged ? "1" : "0"});
  rep.emit(spec);
  return 0;
}

int run_population_mean(const RunSpec& spec) {
  auto dev = deviation_from(spec);
  auto dist = distribution_from(spec);
  auto r = population_mean(dev, dist, dev.domain);
  Report rep;
  rep.scalar("t0", r.t0);
  rep.scalar("residual", r.residual);
  rep.column("interior_point", {r.interior_point ? "1" : "0"});
  rep.scalar("probe_verdict",
             r.probe.finite() ? "finite"
                              : (r.probe.diverging() ? "diverging"
                                                     : "inconclusive"));
  rep.emit(spec);
  return 0;
}

int run_constants(const RunSpec& spec) {
  auto dev = deviation_from(spec);
  auto dist = distribution_from(spec);
  auto k = asymptotic_constants(dev, dist);
  Report rep;
  rep.scalar("t0", k.t0);
  rep.scalar("m2", k.m2);
  rep.scalar("d1", k.d1);
  rep.scalar("sigma2", k.sigma2);
  rep.scalar("lil_c", k.lil_c);
  rep.emit(spec);
  return 0;
}

int run_ld_rate(const RunSpec& spec) {
  if (!spec.has_x) throw UsageError("--x is required");
  auto dev = deviation_from(spec);
  auto dist = distribution_from(spec);
  auto r = ld_rate(dev, dist, spec.x);
  Report rep;
  rep.scalar("x", r.x);
  rep.scalar("c_star", r.c_star);
  rep.scalar("inf_phi", r.inf_phi);
  rep.scalar("gamma", r.gamma);
  rep.emit(spec);
  return 0;
}

int run_axioms(const RunSpec& spec) {
  auto dev = deviation_from(spec);
  auto grid = default_grid(dev.domain);
  auto r = check_deviation_axioms(dev, grid, grid);
  Report rep;
  rep.scalar("diagonal_max_abs", r.diagonal_max_abs);
  rep.column("monotone_violations", {std::to_string(r.monotone_violations)});
  rep.column("x_grid_size", {std::to_string(r.x_grid_size)});
  rep.column("t_grid_size", {std::to_string(r.t_grid_size)});
  rep.scalar("tol", r.tol);
  rep.column("pass", {r.pass ? "1" : "0"});
  rep.emit(spec);
  return r.pass ? 0 : 1;
}

int run_simulate(const RunSpec& spec) {
  auto dev = deviation_from(spec);
  auto dist = distribution_from(spec);
  auto cfg = experiment_from(spec);
  Report rep;
  if (spec.simulate_kind == "slln") {
    auto r = run_slln(dev, dist, cfg);
    rep.scalar("t0", r.t0);
    rep.numeric("n", std::vector<double>(r.n_list.begin(), r.n_list.end()));
    rep.numeric("mean_abs_error", r.mean_abs_error);
  } else if (spec.simulate_kind == "clt") {
    auto r = run_clt(dev, dist, cfg);
    rep.scalar("t0", r.t0);
    rep.scalar("sigma2", r.sigma2);
    rep.column("n", {std::to_string(r.n)});
    rep.column("replications", {std::to_string(spec.replications)});
    rep.scalar("ks_stat", r.ks_stat);
  } else if (spec.simulate_kind == "lil") {
    auto r = run_lil(dev, dist, cfg);
    rep.scalar("t0", r.t0);
    rep.scalar("lil_c", r.lil_c);
    rep.scalar("running_max", r.running_max);
    rep.scalar("running_min", r.running_min);
    rep.numeric("n", std::vector<double>(r.checkpoint_n.begin(),
                                         r.checkpoint_n.end()));
    rep.numeric("scaled", r.scaled);
  } else if (spec.simulate_kind == "ld") {
    if (!spec.has_x) throw UsageError("--x is required");
    auto r = run_ld(dev, dist, spec.x, cfg);
    rep.scalar("x", r.x);
    rep.scalar("theory", r.theory);
    rep.scalar("sup_rate", r.sup_rate);
    rep.column("exact", {r.exact ? "1" : "0"});
    rep.numeric("n", std::vector<double>(r.ns.begin(), r.ns.end()));
    rep.numeric("rate", r.rate);
    if (!r.exact) {
      rep.numeric("wilson_lo", r.wilson_lo);
      rep.numeric("wilson_hi", r.wilson_hi);
    }
  } else {
    throw UsageError("simulate kind must be one of slln, clt, lil, ld");
  }
  rep.emit(spec);
  return 0;
}

int run_verify_paper(const RunSpec& spec) {
  auto checks = verify_paper();
  Report rep;
  std::vector<std::string> ids, expecteds, computeds, tols, rels, passes,
      sources;
  bool all = true;
  for (const auto& c : checks) {
    ids.push_back(c.id);
    expecteds.push_back(fmt17(c.expected));
    computeds.push_back(fmt17(c.computed));
    tols.push_back(fmt17(c.tolerance));
    rels.push_back(c.relative ? "1" : "0");
    passes.push_back(c.pass ? "1" : "0");
    sources.push_back(c.source);
    all = all && c.pass;
  }
  rep.column("id", ids);
  rep.column("expected", expecteds);
  rep.column("computed", computeds);
  rep.column("tolerance", tols);
  rep.column("relative", rels);
  rep.column("pass", passes);
  rep.column("source", sources);
  rep.emit(spec);
  return all ? 0 : 1;
}

}  // namespace

RunSpec parse_args(const std::vector<std::string>& args) {
  RunSpec spec;
  CLI::App app{"deviation means: finite-sample and population solvers, "
               "limit-theorem constants, and simulation experiments"};
  app.add_option("command", spec.command,
                 "mean | population-mean | constants | ld-rate | simulate | "
                 "axioms | verify-paper")
      ->required();
  app.add_option("kind", spec.simulate_kind, "simulate kind: slln|clt|lil|ld");
  app.add_option("--deviation", spec.deviation,
                 "deviation registry string, e.g. power:p=2");
  app.add_option("--distribution", spec.distribution,
                 "distribution registry string, e.g. exponential:rate=1");
  app.add_option("--data", spec.data, "sample values")->delimiter(',');
  auto* xopt = app.add_option("--x", spec.x, "threshold / evaluation point");
  auto* nopt = app.add_option("--n", spec.max_n, "single sample size");
  app.add_option("--n-list", spec.n_list, "sample sizes")->delimiter(',');
  app.add_option("--replications", spec.replications, "replication count");
  app.add_option("--seed", spec.seed, "64-bit RNG seed");
  app.add_option("--max-n", spec.max_n, "largest sample size (lil, ld exact)");
  app.add_option("--threads", spec.threads, "parallelism cap (0 = machine)");
  app.add_option("--output", spec.output, "output path (default stdout)");
  app.add_option("--format", spec.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.set_config("--config", "", "flat key=value file; flags override");

  std::vector<const char*> argv;
  argv.push_back("devmean");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    spec.command = "help";
    return spec;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  spec.has_x = xopt->count() > 0;
  if (nopt->count() > 0) spec.n_list = {spec.max_n};

  static const char* commands[] = {"mean",     "population-mean", "constants",
                                   "ld-rate",  "simulate",        "axioms",
                                   "verify-paper"};
  bool known = false;
  for (const char* c : commands) known = known || spec.command == c;
  if (!known) throw UsageError("unknown command: " + spec.command);
  if (spec.command == "simulate" && spec.simulate_kind.empty())
    throw UsageError("simulate needs a kind: slln | clt | lil | ld");
  return spec;
}

int run(const RunSpec& spec) {
  try {
    if (spec.command == "mean") return run_mean(spec);
    if (spec.command == "population-mean") return run_population_mean(spec);
    if (spec.command == "constants") return run_constants(spec);
    if (spec.command == "ld-rate") return run_ld_rate(spec);
    if (spec.command == "simulate") return run_simulate(spec);
    if (spec.command == "axioms") return run_axioms(spec);
    if (spec.command == "verify-paper") return run_verify_paper(spec);
    throw UsageError("unknown command: " + spec.command);
  } catch (const UsageError& e) {
    std::cerr << json{{"error", e.code()}, {"message", e.what()}}.dump()
              << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << json{{"error", e.code()}, {"message", e.what()}}.dump()
              << "\n";
    return 1;
  }
}

std::vector<GoldenCheck> verify_paper() {
  std::vector<GoldenCheck> checks;
  auto add = [&](const std::string& id, double expected, double computed,
                 double tol, bool relative, const std::string& source) {
    GoldenCheck c{id, expected, computed, tol, relative, source, false};
    double err = std::fabs(expected - computed);
    c.pass = relative ? err <= tol * std::fabs(expected) : err <= tol;
    checks.push_back(c);
  };
  auto guarded = [&](const std::string& id, const std::string& source,
                     const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      GoldenCheck c{id, 0.0, std::numeric_limits<double>::quiet_NaN(), 0.0,
                    false, source + " [" + e.what() + "]", false};
      checks.push_back(c);
    }
  };

  auto power2 = deviations::power(2.0);
  auto exp1 = distributions::exponential(1.0);

  guarded("exp-square-root", "root of E[sign(xi-t)(xi-t)^2] under Exp(1)",
          [&] {
            auto r = population_mean(power2, exp1, power2.domain);
            add("exp-square-root", 1.300075, r.t0, 5e-6, false,
                "root of E[sign(xi-t)(xi-t)^2] under Exp(1)");
          });

  guarded("inverse-quartic-root",
          "root of E[sign(xi-t)(xi-t)^2] under density 3x^-4 on (1,inf)",
          [&] {
            auto r = population_mean(power2, distributions::inverse_quartic(),
                                     power2.domain);
            add("inverse-quartic-root", 2.0, r.t0, 1e-8, false,
                "root of E[sign(xi-t)(xi-t)^2] under density 3x^-4 on (1,inf)");
          });

  for (double t : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
    double expected = t <= 0.0 ? (t - 1.0) * (t - 1.0) + 1.0
                               : 4.0 * std::exp(-t) - (1.0 - t) * (1.0 - t) - 1.0;
    std::string id = "exp-square-g-at-" + fmt17(t);
    guarded(id, "closed form of E[sign(xi-t)(xi-t)^2] under Exp(1)", [&] {
      double g = expect_deviation(power2, exp1, t);
      add(id, expected, g, 1e-8, false,
          "closed form of E[sign(xi-t)(xi-t)^2] under Exp(1)");
    });
  }

  guarded("sublevel-roots", "quadratic sublevel boundary, weights (51,-50)",
          [&] {
            auto roots = sublevel_set_roots({51.0, -50.0}, {50.0, 101.0});
            double disc = std::sqrt(3189600.0);
            double t_minus = (2500.0 - disc) / 2.0;
            double t_plus = (2500.0 + disc) / 2.0;
            if (!roots) throw NoRootInDomain("no real roots");
            add("sublevel-root-lo", t_minus, roots->first, 1e-12, true,
                "quadratic sublevel boundary, weights (51,-50)");
            add("sublevel-root-hi", t_plus, roots->second, 1e-12, true,
                "quadratic sublevel boundary, weights (51,-50)");
            add("sublevel-root-lo-approx", 357.03, roots->first, 0.01, false,
                "displayed two-decimal approximation");
            add("sublevel-root-hi-approx", 2142.97, roots->second, 0.01, false,
                "displayed two-decimal approximation");
          });

  auto logn = distributions::lognormal(0.0, 1.0);
  guarded("lognormal-left-integral",
          "integral of e^{(x-2)^2} dF over (0,2), lognormal(0,1)", [&] {
            double v = expect_on(
                [](double x) { return std::exp((x - 2.0) * (x - 2.0)); },
                logn, 0.0, 2.0);
            add("lognormal-left-integral", 6.55323, v, 5e-4, false,
                "integral of e^{(x-2)^2} dF over (0,2), lognormal(0,1)");
          });
  guarded("lognormal-right-integral",
          "integral of e^{-(x-2)^2} dF over (2,inf), lognormal(0,1)", [&] {
            double v = expect_on(
                [](double x) { return std::exp(-(x - 2.0) * (x - 2.0)); },
                logn, 2.0, std::numeric_limits<double>::infinity());
            add("lognormal-right-integral", 0.09372, v, 5e-4, false,
                "integral of e^{-(x-2)^2} dF over (2,inf), lognormal(0,1)");
          });

  auto ex1v = deviations::ex1v();
  guarded("shifted-lognormal-no-root",
          "piecewise exponential deviation has no population mean under the "
          "shifted lognormal",
          [&] {
            double hit = 0.0;
            try {
              population_mean(ex1v, distributions::shifted_lognormal(),
                              ex1v.domain);
            } catch (const NoRootInDomain&) {
              hit = 1.0;
            }
            add("shifted-lognormal-no-root", 1.0, hit, 0.0, false,
                "piecewise exponential deviation has no population mean "
                "under the shifted lognormal");
          });

  guarded("probe-finite-at-1",
          "E|D(xi,1)| finite for the piecewise exponential deviation, "
          "lognormal(0,1)",
          [&] {
            auto p = integrability_probe(ex1v, logn, 1.0);
            add("probe-finite-at-1", 1.0, p.finite() ? 1.0 : 0.0, 0.0, false,
                "E|D(xi,1)| finite for the piecewise exponential deviation, "
                "lognormal(0,1)");
          });
  guarded("probe-diverging-at-minus-1",
          "E|D(xi,-1)| infinite for the piecewise exponential deviation, "
          "lognormal(0,1)",
          [&] {
            auto p = integrability_probe(ex1v, logn, -1.0);
            add("probe-diverging-at-minus-1", 1.0, p.diverging() ? 1.0 : 0.0,
                0.0, false,
                "E|D(xi,-1)| infinite for the piecewise exponential "
                "deviation, lognormal(0,1)");
          });

  guarded("quadratic-exp-constants",
          "closed forms for D(x,t)=x(x-t)+x^2-t^2 under Exp(1)", [&] {
            auto quad = deviations::quadratic_example();
            auto k = asymptotic_constants(quad, exp1);
            double t0 = -0.5 + std::sqrt(4.25);
            add("quadratic-exp-root", t0, k.t0, 1e-10, false,
                "closed form -1/2 + sqrt(17)/2 under Exp(1)");
            double m2 = -17.0 * t0 + 84.0;  // moment expansion, Exp(1)
            add("quadratic-exp-m2", m2, k.m2, 1e-8, false,
                "second-moment expansion vs direct quadrature");
          });

  return checks;
}

int main_entry(int argc, const char* const* argv) {
  RunSpec spec;
  try {
    spec = parse_args(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const UsageError& e) {
    std::cerr << nlohmann::json{{"error", e.code()}, {"message", e.what()}}
                     .dump()
              << "\n";
    std::cerr << "usage: devmean <command> [kind] [flags]; see --help\n";
    return 2;
  }
  if (spec.command == "help") return 0;
  return run(spec);
}

}  // namespace devmean::cli
