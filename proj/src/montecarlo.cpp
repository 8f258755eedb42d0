#include "devmean/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "devmean/asymptotics.hpp"
#include "devmean/deviations.hpp"
#include "devmean/errors.hpp"
#include "devmean/population.hpp"

namespace devmean {

namespace {

const double kNegInf = -std::numeric_limits<double>::infinity();

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.replications < 1)
    throw UsageError("replications must be at least 1");
  for (std::size_t i = 1; i < cfg.n_list.size(); ++i)
    if (cfg.n_list[i] <= cfg.n_list[i - 1])
      throw UsageError("n_list must be strictly increasing");
}

// Runs fn(r) for r in [0, count) across worker threads; fn writes only to
// its own slot, so results are identical for any thread count.
void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  unsigned hw = std::thread::hardware_concurrency();
  int t = threads > 0 ? threads : (hw > 0 ? static_cast<int>(hw) : 1);
  t = std::min(t, count);
  if (t <= 1) {
    for (int r = 0; r < count; ++r) fn(r);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (int w = 0; w < t; ++w)
    pool.emplace_back([&, w] {
      for (int r = w; r < count; r += t) fn(r);
    });
  for (auto& th : pool) th.join();
}

double lil_scale(long n) { return std::sqrt(2.0 * std::log(std::log(n)) / n); }

// Approximate-GCD lattice detection for the exact LD convolution: the atom
// deviations must all be near-integer multiples of a common step.
bool detect_lattice(const std::vector<double>& ds, double& g,
                    std::vector<long>& ks) {
  double max_abs = 0.0;
  for (double d : ds) max_abs = std::max(max_abs, std::fabs(d));
  if (max_abs == 0.0) return false;
  double tol = 1e-9 * max_abs;
  double acc = 0.0;
  for (double d : ds) {
    double a = std::fabs(d);
    if (a <= tol) continue;
    if (acc == 0.0) {
      acc = a;
      continue;
    }
    double x = std::max(acc, a), y = std::min(acc, a);
    while (y > tol) {
      double r = std::fmod(x, y);
      if (r < tol || y - r < tol) r = 0.0;
      x = y;
      y = r;
    }
    acc = x;
    if (acc <= tol) return false;
  }
  if (acc <= tol) return false;
  // One refinement pass: least-squares step given the rounded multipliers.
  double num = 0.0, den = 0.0;
  ks.clear();
  for (double d : ds) {
    long k = std::lround(d / acc);
    ks.push_back(k);
    num += static_cast<double>(k) * d;
    den += static_cast<double>(k) * static_cast<double>(k);
  }
  if (den == 0.0) return false;
  g = num / den;
  long span = 0;
  for (std::size_t j = 0; j < ds.size(); ++j) {
    if (std::fabs(ds[j] - static_cast<double>(ks[j]) * g) >
        1e-9 * (1.0 + std::fabs(ds[j])))
      return false;
    span = std::max(span, std::labs(ks[j]));
  }
  return span <= 1000000;
}

}  // namespace

std::vector<double> sample(const DistributionSpec& dist, std::size_t n,
                           RngStream& stream) {
  std::vector<double> xs(n);
  for (auto& x : xs) x = dist.sampler(stream);
  return xs;
}

SllnReport run_slln(const Deviation& dev, const DistributionSpec& dist,
                    const ExperimentConfig& cfg, const QuadratureConfig& qcfg) {
  validate_config(cfg);
  if (cfg.n_list.empty()) throw UsageError("n_list must be nonempty");
  SllnReport report;
  report.t0 = population_mean(dev, dist, dev.domain, qcfg).t0;
  report.n_list = cfg.n_list;
  long n_max = cfg.n_list.back();

  std::vector<std::vector<double>> errors(
      cfg.replications, std::vector<double>(cfg.n_list.size()));
  report.final_estimates.assign(cfg.replications, 0.0);
  parallel_for(cfg.replications, cfg.threads, [&](int r) {
    RngStream stream(cfg.seed, static_cast<std::uint64_t>(r));
    auto xs = sample(dist, static_cast<std::size_t>(n_max), stream);
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
      std::vector<double> prefix(xs.begin(),
                                 xs.begin() + cfg.n_list[i]);
      double m = deviation_mean(dev, prefix).root;
      errors[r][i] = std::fabs(m - report.t0);
      if (i + 1 == cfg.n_list.size()) report.final_estimates[r] = m;
    }
  });
  report.mean_abs_error.assign(cfg.n_list.size(), 0.0);
  for (int r = 0; r < cfg.replications; ++r)
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i)
      report.mean_abs_error[i] += errors[r][i] / cfg.replications;
  return report;
}

CltReport run_clt(const Deviation& dev, const DistributionSpec& dist,
                  const ExperimentConfig& cfg, const QuadratureConfig& qcfg) {
  validate_config(cfg);
  if (cfg.n_list.empty()) throw UsageError("n_list must be nonempty");
  auto k = asymptotic_constants(dev, dist, qcfg);
  CltReport report;
  report.t0 = k.t0;
  report.sigma2 = k.sigma2;
  report.n = cfg.n_list.back();
  report.z.assign(cfg.replications, 0.0);
  double sigma = std::sqrt(k.sigma2);
  parallel_for(cfg.replications, cfg.threads, [&](int r) {
    RngStream stream(cfg.seed, static_cast<std::uint64_t>(r));
    auto xs = sample(dist, static_cast<std::size_t>(report.n), stream);
    double m = deviation_mean(dev, xs).root;
    report.z[r] = std::sqrt(static_cast<double>(report.n)) * (m - k.t0) / sigma;
  });
  report.ks_stat = ks_statistic(report.z, [](double v) { return normal_cdf(v); });
  return report;
}

LilReport run_lil(const Deviation& dev, const DistributionSpec& dist,
                  const ExperimentConfig& cfg, const QuadratureConfig& qcfg) {
  validate_config(cfg);
  if (cfg.max_n < 10000) throw UsageError("LIL run needs max_n >= 10^4");
  LilReport report;
  report.t0 = population_mean(dev, dist, dev.domain, qcfg).t0;
  try {
    report.lil_c = asymptotic_constants(dev, dist, qcfg).lil_c;
  } catch (const DegenerateDistribution&) {
    report.lil_c = 0.0;  // point-mass trajectories are identically t0
  }

  std::vector<long> checkpoints = cfg.checkpoints;
  if (checkpoints.empty()) {
    for (long n = 8; n < cfg.max_n; n *= 2) checkpoints.push_back(n);
    checkpoints.push_back(cfg.max_n);
  }

  RngStream stream(cfg.seed, 0);
  auto xs = sample(dist, static_cast<std::size_t>(cfg.max_n), stream);
  report.running_max = kNegInf;
  report.running_min = -kNegInf;
  for (long n : checkpoints) {
    if (n < 3 || n > cfg.max_n) continue;
    std::vector<double> prefix(xs.begin(), xs.begin() + n);
    double m = deviation_mean(dev, prefix).root;
    double s = (m - report.t0) / lil_scale(n);
    report.checkpoint_n.push_back(n);
    report.scaled.push_back(s);
    if (n >= report.burn_in) {
      report.running_max = std::max(report.running_max, s);
      report.running_min = std::min(report.running_min, s);
    }
  }
  return report;
}

LdReport run_ld(const Deviation& dev, const DistributionSpec& dist, double x,
                const ExperimentConfig& cfg, const QuadratureConfig& qcfg) {
  validate_config(cfg);
  auto rate = ld_rate(dev, dist, x, qcfg);
  LdReport report;
  report.x = x;
  report.theory = std::log(rate.inf_phi);
  report.sup_rate = kNegInf;

  if (dist.kind == DistributionSpec::Kind::Discrete &&
      dist.atoms.size() <= 12) {
    std::vector<double> ds;
    for (const auto& a : dist.atoms) ds.push_back(dev(a.value, x));
    double g = 0.0;
    std::vector<long> ks;
    if (detect_lattice(ds, g, ks)) {
      report.exact = true;
      long m_cap = std::min<long>(cfg.max_n, 500);
      long kmin = *std::min_element(ks.begin(), ks.end());
      long kmax = *std::max_element(ks.begin(), ks.end());
      // w[i] ~ P(S_m = (m*kmin + i) * g), renormalized by the running max.
      std::vector<double> w = {1.0};
      double log_c = 0.0;
      for (long m = 1; m <= m_cap; ++m) {
        std::vector<double> next(w.size() + static_cast<std::size_t>(kmax - kmin),
                                 0.0);
        for (std::size_t i = 0; i < w.size(); ++i) {
          if (w[i] == 0.0) continue;
          for (std::size_t j = 0; j < ks.size(); ++j)
            next[i + static_cast<std::size_t>(ks[j] - kmin)] +=
                w[i] * dist.atoms[j].prob;
        }
        double mx = *std::max_element(next.begin(), next.end());
        if (mx <= 0.0) {
          w = std::move(next);
          break;
        }
        for (auto& v : next) v /= mx;
        log_c += std::log(mx);
        w = std::move(next);
        // S_m >= 0 on the exact lattice: index i with m*kmin + i >= 0.
        long first = std::max<long>(0, -m * kmin);
        double tail = 0.0;
        for (std::size_t i = static_cast<std::size_t>(first); i < w.size(); ++i)
          tail += w[i];
        double r = tail > 0.0 ? (std::log(tail) + log_c) / m : kNegInf;
        report.ns.push_back(m);
        report.rate.push_back(r);
        report.sup_rate = std::max(report.sup_rate, r);
      }
      return report;
    }
  }

  // Empirical fallback: frequencies of {M_n >= x} with Wilson intervals.
  if (cfg.n_list.empty()) throw UsageError("n_list must be nonempty");
  const double z = 1.959963984540054;  // 95% normal quantile
  for (long n : cfg.n_list) {
    std::vector<int> hit(cfg.replications, 0);
    parallel_for(cfg.replications, cfg.threads, [&](int r) {
      RngStream stream(cfg.seed, static_cast<std::uint64_t>(r) * 1000003ULL +
                                     static_cast<std::uint64_t>(n));
      auto xs = sample(dist, static_cast<std::size_t>(n), stream);
      hit[r] = deviation_mean(dev, xs).root >= x ? 1 : 0;
    });
    double cnt = 0.0;
    for (int h : hit) cnt += h;
    double nn = cfg.replications;
    double p = cnt / nn;
    double denom = 1.0 + z * z / nn;
    double center = (p + z * z / (2.0 * nn)) / denom;
    double half = z / denom *
                  std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn));
    report.ns.push_back(n);
    report.rate.push_back(p > 0.0 ? std::log(p) / n : kNegInf);
    report.wilson_lo.push_back(std::max(0.0, center - half));
    report.wilson_hi.push_back(std::min(1.0, center + half));
    if (p > 0.0)
      report.sup_rate = std::max(report.sup_rate, std::log(p) / n);
  }
  return report;
}

double ks_statistic(std::vector<double> values,
                    const std::function<double(double)>& cdf) {
  if (values.empty()) throw EmptyInput("KS statistic needs values");
  std::sort(values.begin(), values.end());
  double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double f = cdf(values[i]);
    d = std::max(d, (i + 1) / n - f);
    d = std::max(d, f - i / n);
  }
  return d;
}

}  // namespace devmean
