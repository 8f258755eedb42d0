#include "devmean/deviations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "devmean/errors.hpp"

namespace devmean {

RootResult deviation_mean(const Deviation& dev, const std::vector<double>& xs,
                          const SolverConfig& cfg) {
  if (xs.empty()) throw EmptySample("deviation_mean of empty sample");
  for (double x : xs)
    if (!dev.domain.contains(x))
      throw DomainViolation("sample point outside deviation domain");

  auto [mn_it, mx_it] = std::minmax_element(xs.begin(), xs.end());
  double lo = *mn_it, hi = *mx_it;
  if (lo == hi) {
    RootResult r;
    r.root = lo;
    r.bracket_lo = lo;
    r.bracket_hi = hi;
    r.residual = 0.0;
    r.iterations = 0;
    r.converged = true;
    return r;
  }

  auto objective = [&](double t) {
    double s = 0.0;
    for (double x : xs) s += dev.eval(x, t);
    return s;
  };

  double f_lo = objective(lo);  // >= 0
  double f_hi = objective(hi);  // <= 0
  double scale = 0.0;
  for (double x : xs) scale += std::fabs(dev.eval(x, lo));
  return solve_decreasing(objective, lo, hi, f_lo, f_hi, scale, cfg);
}

Deviation make_bajraktarevic_deviation(const Generator& f, const Weight& p) {
  Deviation d;
  d.name = "baj(" + f.name + "," + p.name + ")";
  d.domain = f.domain;
  double sign = f.increasing ? 1.0 : -1.0;
  auto fn = f.fn;
  auto pw = p.fn;
  d.eval = [fn, pw, sign](double x, double t) {
    return sign * pw(x) * (fn(x) - fn(t));
  };
  if (f.deriv) {
    auto fd = f.deriv;
    d.d2 = [fd, pw, sign](double x, double t) { return -sign * pw(x) * fd(t); };
  }
  return d;
}

namespace deviations {

Deviation linear() {
  Deviation d;
  d.name = "linear";
  d.domain = Interval::whole_line();
  d.eval = [](double x, double t) { return x - t; };
  d.d2 = [](double, double) { return -1.0; };
  return d;
}

Deviation power(double p) {
  Deviation d;
  d.name = "power(" + std::to_string(p) + ")";
  d.domain = Interval::whole_line();
  d.eval = [p](double x, double t) {
    double u = x - t;
    if (u == 0.0) return 0.0;
    return (u > 0.0 ? 1.0 : -1.0) * std::pow(std::fabs(u), p);
  };
  if (p >= 1.0)
    d.d2 = [p](double x, double t) {
      return -p * std::pow(std::fabs(x - t), p - 1.0);
    };
  return d;
}

Deviation quadratic_example() {
  Deviation d;
  d.name = "quadratic-example";
  d.domain = Interval::open(0.0, std::numeric_limits<double>::infinity());
  d.eval = [](double x, double t) { return x * (x - t) + x * x - t * t; };
  d.d2 = [](double x, double t) { return -x - 2.0 * t; };
  return d;
}

Deviation ex1v() {
  Deviation d;
  d.name = "ex1v";
  d.domain = Interval{-2.0, std::numeric_limits<double>::infinity(), false, true};
  // Exponent arguments clamped at 700 to keep overflow as a large finite
  // value rather than inf; divergence detection relies on growth, not inf.
  auto cexp = [](double a) { return std::exp(std::min(a, 700.0)); };
  d.eval = [cexp](double x, double t) {
    if (x < 0.0) return cexp(x * t) - cexp(x * x);
    if (x == 0.0) return -t;
    return cexp(-x * t) - cexp(-x * x);
  };
  d.d2 = [cexp](double x, double t) {
    if (x < 0.0) return x * cexp(t * x);
    if (x == 0.0) return -1.0;
    return -x * cexp(-x * t);
  };
  d.x_kinks = {0.0};
  return d;
}

Deviation quasi_arithmetic(const Generator& f) {
  return make_bajraktarevic_deviation(f, weights::one());
}

}  // namespace deviations

namespace {

double param_or(const std::map<std::string, std::string>& params,
                const std::string& key, double fallback, bool* found = nullptr) {
  auto it = params.find(key);
  if (it == params.end()) {
    if (found) *found = false;
    return fallback;
  }
  if (found) *found = true;
  return std::stod(it->second);
}

// Parses "name" or "name(a)" or "name(a,b)".
void split_call(const std::string& spec, std::string& name,
                std::vector<double>& args) {
  auto lp = spec.find('(');
  if (lp == std::string::npos) {
    name = spec;
    return;
  }
  if (spec.back() != ')')
    throw UsageError("malformed preset value: " + spec);
  name = spec.substr(0, lp);
  std::string inner = spec.substr(lp + 1, spec.size() - lp - 2);
  std::stringstream ss(inner);
  std::string tok;
  while (std::getline(ss, tok, ',')) args.push_back(std::stod(tok));
}

}  // namespace

Generator make_generator(const std::string& spec) {
  std::string name;
  std::vector<double> args;
  split_call(spec, name, args);
  if (name == "identity") return generators::identity();
  if (name == "ln") return generators::ln();
  if (name == "exp") return generators::exp();
  if (name == "power") {
    if (args.size() != 1) throw UsageError("power generator needs one argument");
    return generators::power(args[0]);
  }
  if (name == "affine") {
    if (args.size() != 2) throw UsageError("affine generator needs two arguments");
    return generators::affine(args[0], args[1]);
  }
  throw UsageError("unknown generator preset: " + name);
}

Weight make_weight(const std::string& spec) {
  std::string name;
  std::vector<double> args;
  split_call(spec, name, args);
  if (name == "one") return weights::one();
  if (name == "identity") return weights::identity();
  if (name == "power") {
    if (args.size() != 1) throw UsageError("power weight needs one argument");
    return weights::power(args[0]);
  }
  throw UsageError("unknown weight preset: " + name);
}

Deviation make_deviation(const std::string& name,
                         const std::map<std::string, std::string>& params) {
  if (name == "linear") return deviations::linear();
  if (name == "power") {
    bool found = false;
    double p = param_or(params, "p", 2.0, &found);
    if (!found) throw UsageError("power deviation needs p=<exponent>");
    if (!(p > 0.0)) throw UsageError("power deviation needs p > 0");
    return deviations::power(p);
  }
  if (name == "quadratic-example") return deviations::quadratic_example();
  if (name == "ex1v") return deviations::ex1v();
  if (name == "qa") {
    auto it = params.find("f");
    if (it == params.end()) throw UsageError("qa deviation needs f=<generator>");
    return deviations::quasi_arithmetic(make_generator(it->second));
  }
  if (name == "baj") {
    auto fit = params.find("f");
    auto pit = params.find("p");
    if (fit == params.end() || pit == params.end())
      throw UsageError("baj deviation needs f=<generator>,p=<weight>");
    return make_bajraktarevic_deviation(make_generator(fit->second),
                                        make_weight(pit->second));
  }
  throw UsageError("unknown deviation preset: " + name);
}

}  // namespace devmean
