#ifndef DEVMEAN_DISTRIBUTION_HPP
#define DEVMEAN_DISTRIBUTION_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "devmean/interval.hpp"
#include "devmean/rng.hpp"

namespace devmean {

struct DiscreteAtom {
  double value;
  double prob;
};

// A univariate law: a discrete pmf, a density on an interval, or a pure
// sampler.  Quadrature-backed operations reject sampler_only specs.
struct DistributionSpec {
  enum class Kind { Discrete, Density, SamplerOnly };

  Kind kind = Kind::SamplerOnly;
  std::string name;
  std::vector<DiscreteAtom> atoms;      // Discrete
  std::function<double(double)> pdf;    // Density; 0 outside support
  Interval support;
  std::function<double(RngStream&)> sampler;
  double median = 0.0;                   // root-search starting point
  double ess_sup = 0.0;                  // declared, never inferred
  std::map<int, double> analytic_moments;

  bool has_moment(int k) const { return analytic_moments.count(k) > 0; }
  double moment(int k) const { return analytic_moments.at(k); }
};

namespace distributions {
DistributionSpec exponential(double rate);
DistributionSpec inverse_quartic();              // density 3 x^-4 on (1, inf)
DistributionSpec lognormal(double mu, double sigma);
DistributionSpec shifted_lognormal();            // e^eta - 2, support (-2, inf)
DistributionSpec uniform(double a, double b);
DistributionSpec bernoulli(double p);            // atoms {0, 1} on I = [0, 1]
DistributionSpec discrete(std::vector<DiscreteAtom> atoms);
DistributionSpec pointmass(double v);
// Standard normal truncated to [-c, c]; carries an analytic mgf for oracles.
DistributionSpec truncated_normal(double c);
}  // namespace distributions

// Registry lookup mirroring the CLI grammar, e.g. ("exponential", {rate: "1"}).
DistributionSpec make_distribution(const std::string& name,
                                   const std::map<std::string, std::string>& params);

// Closed-form mgf E e^{c xi} of the truncated normal preset.
double truncated_normal_mgf(double c, double halfwidth);

// Standard normal CDF.
double normal_cdf(double z);

}  // namespace devmean

#endif
