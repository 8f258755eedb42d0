#ifndef DEVMEAN_POPULATION_HPP
#define DEVMEAN_POPULATION_HPP

#include <functional>
#include <vector>

#include "devmean/deviation.hpp"
#include "devmean/distribution.hpp"
#include "devmean/means.hpp"
#include "devmean/quadrature.hpp"

namespace devmean {

// E f(xi): an atom-weighted sum for discrete laws, adaptive quadrature of
// f * pdf for densities.  Rejects sampler-only laws.
double expect(const std::function<double(double)>& f,
              const DistributionSpec& dist, const QuadratureConfig& cfg = {});

// E[f(xi) 1{a <= xi <= b}], the range-restricted expectation.
double expect_on(const std::function<double(double)>& f,
                 const DistributionSpec& dist, double a, double b,
                 const QuadratureConfig& cfg = {});

struct IntegrabilityProbe {
  enum class Verdict { Finite, Diverging, Inconclusive };

  double t = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<double> truncated_values;

  bool finite() const { return verdict == Verdict::Finite; }
  bool diverging() const { return verdict == Verdict::Diverging; }
};

// Classifies integrability of E|D(xi,t)| by partial integrals over an
// expanding sequence of compact windows: Cauchy tail => finite, a doubling
// step => diverging, otherwise inconclusive.
IntegrabilityProbe integrability_probe(const Deviation& dev,
                                       const DistributionSpec& dist, double t,
                                       const QuadratureConfig& cfg = {});

// Integrability probe for an arbitrary integrand E|f(xi)|.
IntegrabilityProbe probe_expectation(const std::function<double(double)>& f,
                                     const DistributionSpec& dist,
                                     const QuadratureConfig& cfg = {});

// g(t) = E D(xi,t), strictly decreasing in t.  Throws Divergent when the
// integrability probe reports divergence at t.
double expect_deviation(const Deviation& dev, const DistributionSpec& dist,
                        double t, const QuadratureConfig& cfg = {});

struct PopulationMeanResult {
  double t0 = 0.0;
  double residual = 0.0;
  bool interior_point = false;
  IntegrabilityProbe probe;
};

// The unique root t0 of g on `search`, found by geometric bracket expansion
// from the distribution median followed by the bracketed root solver.
// Throws NoRootInDomain when g keeps one sign over the whole search region.
PopulationMeanResult population_mean(const Deviation& dev,
                                     const DistributionSpec& dist,
                                     const Interval& search,
                                     const QuadratureConfig& cfg = {});

// f^{-1}(E f(xi)).
double quasi_arithmetic_expected_value(const Generator& f,
                                       const DistributionSpec& dist,
                                       const QuadratureConfig& cfg = {});

// f^{-1}( E[p(xi) f(xi)] / E[p(xi)] ).
double bajraktarevic_expected_value(const Generator& f, const Weight& p,
                                    const DistributionSpec& dist,
                                    const QuadratureConfig& cfg = {});

// Independent oracle: minimizes t -> E rho(xi,t) over t_grid with
// golden-section refinement, where rho(x,t) = integral_x^t -D(x,s) ds.
// Throws GridTooCoarse when the minimum sits on the grid boundary.
double argmin_oracle(const Deviation& dev, const DistributionSpec& dist,
                     const std::vector<double>& t_grid,
                     const QuadratureConfig& cfg = {});
double argmin_oracle(const Deviation& dev, const std::vector<double>& sample,
                     const std::vector<double>& t_grid);

}  // namespace devmean

#endif
