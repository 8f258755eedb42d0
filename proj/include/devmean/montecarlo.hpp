#ifndef DEVMEAN_MONTECARLO_HPP
#define DEVMEAN_MONTECARLO_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "devmean/deviation.hpp"
#include "devmean/distribution.hpp"
#include "devmean/quadrature.hpp"
#include "devmean/rng.hpp"

namespace devmean {

struct ExperimentConfig {
  std::vector<long> n_list;
  int replications = 100;
  std::uint64_t seed = 0;
  long max_n = 100000;
  std::vector<long> checkpoints;  // empty => dyadic schedule up to max_n
  int threads = 0;                // 0 => hardware concurrency
};

// n i.i.d. draws; deterministic given the stream.
std::vector<double> sample(const DistributionSpec& dist, std::size_t n,
                           RngStream& stream);

struct SllnReport {
  double t0 = 0.0;
  std::vector<long> n_list;
  std::vector<double> mean_abs_error;   // per n, averaged over replications
  std::vector<double> final_estimates;  // per replication, at max n
};

// Nested-prefix trajectories: each replication draws one sample of size
// max(n_list) and evaluates the deviation mean along its prefixes.
SllnReport run_slln(const Deviation& dev, const DistributionSpec& dist,
                    const ExperimentConfig& cfg,
                    const QuadratureConfig& qcfg = {});

struct CltReport {
  double t0 = 0.0;
  double sigma2 = 0.0;
  long n = 0;
  std::vector<double> z;  // sqrt(n) (M_n - t0) / sigma, one per replication
  double ks_stat = 0.0;   // against the standard normal CDF
};

CltReport run_clt(const Deviation& dev, const DistributionSpec& dist,
                  const ExperimentConfig& cfg,
                  const QuadratureConfig& qcfg = {});

struct LilReport {
  double t0 = 0.0;
  double lil_c = 0.0;
  std::vector<long> checkpoint_n;
  std::vector<double> scaled;  // (M_n - t0) / sqrt(2 ln ln n / n)
  double running_max = 0.0;    // over checkpoints with n >= burn-in
  double running_min = 0.0;
  long burn_in = 1000;
};

// One long trajectory with dyadic (or explicit) checkpoints.
LilReport run_lil(const Deviation& dev, const DistributionSpec& dist,
                  const ExperimentConfig& cfg,
                  const QuadratureConfig& qcfg = {});

struct LdReport {
  double x = 0.0;
  double theory = 0.0;  // ln inf_phi from the rate minimization
  bool exact = false;
  std::vector<long> ns;
  std::vector<double> rate;        // (1/n) ln P(M_n >= x)
  std::vector<double> wilson_lo;   // empirical mode only
  std::vector<double> wilson_hi;
  double sup_rate = 0.0;
};

// Discrete laws with <= 12 atoms on a detectable lattice: exact
// P(sum D(xi_i, x) >= 0) by renormalized DP convolution for n <= 500.
// Otherwise empirical frequencies over replications with Wilson intervals.
LdReport run_ld(const Deviation& dev, const DistributionSpec& dist, double x,
                const ExperimentConfig& cfg,
                const QuadratureConfig& qcfg = {});

// One-sample Kolmogorov-Smirnov sup-distance of `values` against `cdf`.
double ks_statistic(std::vector<double> values,
                    const std::function<double(double)>& cdf);

}  // namespace devmean

#endif
