#ifndef DEVMEAN_ASYMPTOTICS_HPP
#define DEVMEAN_ASYMPTOTICS_HPP

#include "devmean/deviation.hpp"
#include "devmean/distribution.hpp"
#include "devmean/means.hpp"
#include "devmean/quadrature.hpp"

namespace devmean {

// Partial derivative of D in its second argument: analytic when the
// deviation provides one, otherwise a central difference with step
// h = 1e-6 (1 + |t|), one-sided at domain boundaries.
double d2_deviation(const Deviation& dev, double x, double t);

struct AsymptoticConstants {
  double t0 = 0.0;
  double m2 = 0.0;      // E[D(xi,t0)^2]
  double d1 = 0.0;      // E[-d2 D(xi,t0)]
  double sigma2 = 0.0;  // m2 / d1^2, the CLT variance
  double lil_c = 0.0;   // sqrt(m2) / d1, the LIL constant
};

// Solves for t0 and evaluates the second moment and derivative expectations
// behind the CLT variance and LIL constant.
AsymptoticConstants asymptotic_constants(const Deviation& dev,
                                         const DistributionSpec& dist,
                                         const QuadratureConfig& cfg = {});

// Closed-form CLT variance of the Bajraktarevic mean, from the five
// expectations E p, E pf, Var p, Var pf, Cov(p, pf) and f' at the
// Bajraktarevic expected value.
double bajraktarevic_sigma2(const Generator& f, const Weight& p,
                            const DistributionSpec& dist,
                            const QuadratureConfig& cfg = {});

// phi(c, x) = E exp(c D(xi, x)).  Throws Divergent when the expectation is
// infinite (exact for discrete laws, probed for densities).
double mgf_phi(const Deviation& dev, const DistributionSpec& dist, double c,
               double x, const QuadratureConfig& cfg = {});

struct LDResult {
  double x = 0.0;
  double inf_phi = 0.0;  // inf over c > 0 of phi(c, x)
  double c_star = 0.0;
  double gamma = 0.0;    // -ln inf_phi, the exponential decay rate
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

// Minimizes the convex c -> ln phi(c,x) over c > 0 by bracket expansion and
// golden-section search.  Requires E D(xi,x) < 0 (NotBeyondMean otherwise);
// FlatObjective when the objective never turns upward; Divergent when phi is
// infinite for every probed c.
LDResult ld_rate(const Deviation& dev, const DistributionSpec& dist, double x,
                 const QuadratureConfig& cfg = {});

// Cramer rate: sup over c > 0 of { c y - ln E e^{c xi} }.  Requires
// E xi < y < ess sup xi.
double cramer_gamma(const DistributionSpec& dist, double y,
                    const QuadratureConfig& cfg = {});

}  // namespace devmean

#endif
