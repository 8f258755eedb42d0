#include "devmean/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "devmean/errors.hpp"
#include "devmean/quadrature.hpp"

namespace devmean {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

double lognormal_pdf(double x, double mu, double sigma) {
  if (x <= 0.0) return 0.0;
  double z = (std::log(x) - mu) / sigma;
  return std::exp(-0.5 * z * z) / (x * sigma * std::sqrt(2.0 * 3.14159265358979323846));
}

void validate_density(const DistributionSpec& d) {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-9;
  cfg.rel_tol = 1e-9;
  double mass = integrate_interval(d.pdf, d.support.lo, d.support.hi, cfg);
  if (std::fabs(mass - 1.0) > 1e-6)
    throw DomainViolation("density preset '" + d.name +
                          "' does not integrate to 1");
}

void validate_discrete(const DistributionSpec& d) {
  double total = 0.0;
  for (const auto& a : d.atoms) {
    if (!(a.prob > 0.0))
      throw DomainViolation("discrete probabilities must be positive");
    total += a.prob;
  }
  if (std::fabs(total - 1.0) > 1e-12)
    throw DomainViolation("discrete probabilities must sum to 1");
}

}  // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double truncated_normal_mgf(double c, double halfwidth) {
  double w = halfwidth;
  double z = normal_cdf(w) - normal_cdf(-w);
  return std::exp(0.5 * c * c) *
         (normal_cdf(w - c) - normal_cdf(-w - c)) / z;
}

namespace distributions {

DistributionSpec exponential(double rate) {
  if (!(rate > 0.0)) throw DomainViolation("exponential rate must be positive");
  DistributionSpec d;
  d.kind = DistributionSpec::Kind::Density;
  d.name = "exponential";
  d.support = Interval::open(0.0, kInf);
  d.pdf = [rate](double x) { return x > 0.0 ? rate * std::exp(-rate * x) : 0.0; };
  d.sampler = [rate](RngStream& rng) { return -std::log(rng.u01()) / rate; };
  d.median = std::log(2.0) / rate;
  d.ess_sup = kInf;
  double f = 1.0;
  for (int k = 1; k <= 4; ++k) {
    f *= k;
    d.analytic_moments[k] = f / std::pow(rate, k);
  }
  return d;
}

DistributionSpec inverse_quartic() {
  DistributionSpec d;
  d.kind = DistributionSpec::Kind::Density;
  d.name = "inverse-quartic";
  d.support = Interval::open(1.0, kInf);
  d.pdf = [](double x) { return x > 1.0 ? 3.0 * std::pow(x, -4.0) : 0.0; };
  // F(x) = 1 - x^-3
  d.sampler = [](RngStream& rng) { return std::pow(rng.u01(), -1.0 / 3.0); };
  d.median = std::cbrt(2.0);
  d.ess_sup = kInf;
  d.analytic_moments[1] = 1.5;
  d.analytic_moments[2] = 3.0;
  return d;
}

DistributionSpec lognormal(double mu, double sigma) {
  if (!(sigma > 0.0)) throw DomainViolation("lognormal sigma must be positive");
  DistributionSpec d;
  d.kind = DistributionSpec::Kind::Density;
  d.name = "lognormal";
  d.support = Interval::open(0.0, kInf);
  d.pdf = [mu, sigma](double x) { return lognormal_pdf(x, mu, sigma); };
  d.sampler = [mu, sigma](RngStream& rng) {
    return std::exp(mu + sigma * rng.normal());
  };
  d.median = std::exp(mu);
  d.ess_sup = kInf;
  for (int k = 1; k <= 4; ++k)
    d.analytic_moments[k] = std::exp(k * mu + 0.5 * k * k * sigma * sigma);
  return d;
}

DistributionSpec shifted_lognormal() {
  DistributionSpec d;
  d.kind = DistributionSpec::Kind::Density;
  d.name = "shifted-lognormal";
  d.support = Interval::open(-2.0, kInf);
  d.pdf = [](double x) { return lognormal_pdf(x + 2.0, 0.0, 1.0); };
  d.sampler = [](RngStream& rng) { return std::exp(rng.normal()) - 2.0; };
  d.median = -1.0;
  d.ess_sup = kInf;
  return d;
}

DistributionSpec uniform(double a, double b) {
  if (!(a < b)) throw DomainViolation("uniform needs a < b");
  DistributionSpec d;
  d.kind = DistributionSpec::Kind::Density;
  d.name = "uniform";
  d.support = Interval::closed(a, b);
  double w = b - a;
  d.pdf = [a, b, w](double x) { return (x >= a && x <= b) ? 1.0 / w : 0.0; };
  d.sampler = [a, w](RngStream& rng) { return a + w * rng.u01(); };
  d.median = 0.5 * (a + b);
  d.ess_sup = b;
  d.analytic_moments[1] = 0.5 * (a + b);
  d.analytic_moments[2] = (a * a + a * b + b * b) / 3.0;
  return d;
}

DistributionSpec discrete(std::vector<DiscreteAtom> atoms) {
  if (atoms.empty()) throw DomainViolation("discrete law needs atoms");
  std::sort(atoms.begin(), atoms.end(),
            [](const DiscreteAtom& u, const DiscreteAtom& v) {
              return u.value < v.value;
            });
  DistributionSpec d;
  d.kind = DistributionSpec::Kind::Discrete;
  d.name = "discrete";
  d.atoms = std::move(atoms);
  d.support = Interval::closed(d.atoms.front().value, d.atoms.back().value);
  validate_discrete(d);
  auto table = d.atoms;  // copy captured by the sampler
  d.sampler = [table](RngStream& rng) {
    double u = rng.u01(), acc = 0.0;
    for (const auto& a : table) {
      acc += a.prob;
      if (u <= acc) return a.value;
    }
    return table.back().value;
  };
  double acc = 0.0;
  d.median = d.atoms.back().value;
  for (const auto& a : d.atoms) {
    acc += a.prob;
    if (acc >= 0.5) {
      d.median = a.value;
      break;
    }
  }
  d.ess_sup = d.atoms.back().value;
  double m1 = 0.0, m2 = 0.0;
  for (const auto& a : d.atoms) {
    m1 += a.prob * a.value;
    m2 += a.prob * a.value * a.value;
  }
  d.analytic_moments[1] = m1;
  d.analytic_moments[2] = m2;
  return d;
}

DistributionSpec bernoulli(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainViolation("bernoulli needs 0 < p < 1");
  auto d = discrete({{0.0, 1.0 - p}, {1.0, p}});
  d.name = "bernoulli";
  d.support = Interval::closed(0.0, 1.0);
  return d;
}

DistributionSpec pointmass(double v) {
  DistributionSpec d;
  d.kind = DistributionSpec::Kind::Discrete;
  d.name = "pointmass";
  d.atoms = {{v, 1.0}};
  d.support = Interval::closed(v, v);
  d.sampler = [v](RngStream&) { return v; };
  d.median = v;
  d.ess_sup = v;
  d.analytic_moments[1] = v;
  d.analytic_moments[2] = v * v;
  return d;
}

DistributionSpec truncated_normal(double c) {
  if (!(c > 0.0)) throw DomainViolation("truncation halfwidth must be positive");
  DistributionSpec d;
  d.kind = DistributionSpec::Kind::Density;
  d.name = "truncated-normal";
  d.support = Interval::closed(-c, c);
  double z = normal_cdf(c) - normal_cdf(-c);
  d.pdf = [c, z](double x) {
    if (x < -c || x > c) return 0.0;
    return std::exp(-0.5 * x * x) / (z * std::sqrt(2.0 * 3.14159265358979323846));
  };
  d.sampler = [c](RngStream& rng) {
    for (;;) {
      double v = rng.normal();
      if (v >= -c && v <= c) return v;
    }
  };
  d.median = 0.0;
  d.ess_sup = c;
  d.analytic_moments[1] = 0.0;
  return d;
}

}  // namespace distributions

DistributionSpec make_distribution(
    const std::string& name, const std::map<std::string, std::string>& params) {
  auto num = [&](const std::string& key, double fallback,
                 bool required = false) {
    auto it = params.find(key);
    if (it == params.end()) {
      if (required) throw UsageError("distribution '" + name + "' needs " + key);
      return fallback;
    }
    return std::stod(it->second);
  };
  DistributionSpec d;
  if (name == "exponential") d = distributions::exponential(num("rate", 1.0));
  else if (name == "inverse-quartic") d = distributions::inverse_quartic();
  else if (name == "lognormal")
    d = distributions::lognormal(num("mu", 0.0), num("sigma", 1.0));
  else if (name == "shifted-lognormal") d = distributions::shifted_lognormal();
  else if (name == "uniform")
    d = distributions::uniform(num("a", 0.0, true), num("b", 0.0, true));
  else if (name == "bernoulli") d = distributions::bernoulli(num("p", 0.5));
  else if (name == "pointmass") d = distributions::pointmass(num("v", 0.0, true));
  else if (name == "truncated-normal")
    d = distributions::truncated_normal(num("c", 5.0));
  else if (name == "discrete") {
    // atoms=(v:p;v:p;...)
    auto it = params.find("atoms");
    if (it == params.end()) throw UsageError("discrete needs atoms=(v:p;...)");
    std::string s = it->second;
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')')
      s = s.substr(1, s.size() - 2);
    std::vector<DiscreteAtom> atoms;
    std::size_t pos = 0;
    while (pos < s.size()) {
      auto semi = s.find(';', pos);
      std::string tok = s.substr(pos, semi == std::string::npos ? std::string::npos
                                                                : semi - pos);
      auto colon = tok.find(':');
      if (colon == std::string::npos)
        throw UsageError("discrete atom must be value:prob");
      atoms.push_back({std::stod(tok.substr(0, colon)),
                       std::stod(tok.substr(colon + 1))});
      if (semi == std::string::npos) break;
      pos = semi + 1;
    }
    d = distributions::discrete(std::move(atoms));
  } else {
    throw UsageError("unknown distribution preset: " + name);
  }
  if (d.kind == DistributionSpec::Kind::Density) validate_density(d);
  return d;
}

}  // namespace devmean
