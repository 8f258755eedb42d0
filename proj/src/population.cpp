#include "devmean/population.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "devmean/errors.hpp"
#include "devmean/root_solver.hpp"

namespace devmean {

namespace {

void require_integrable_kind(const DistributionSpec& dist) {
  if (dist.kind == DistributionSpec::Kind::SamplerOnly)
    throw SamplerOnlyUnsupported("quadrature needs a pmf or density: " +
                                 dist.name);
}

// Density integral of `f * pdf` over (a, b), split at the interior points in
// `cuts` so the adaptive rule never straddles a kink.
double density_expect(const std::function<double(double)>& f,
                      const DistributionSpec& dist, double a, double b,
                      std::vector<double> cuts, const QuadratureConfig& cfg) {
  auto integrand = [&](double x) { return f(x) * dist.pdf(x); };
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(),
                            [&](double c) { return !(c > a && c < b); }),
             cuts.end());
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0, lo = a;
  for (double c : cuts) {
    total += integrate_interval(integrand, lo, c, cfg);
    lo = c;
  }
  total += integrate_interval(integrand, lo, b, cfg);
  return total;
}

// Partial-integral probe of integrand * pdf over expanding windows.
IntegrabilityProbe probe_integrand(const std::function<double(double)>& fn,
                                   const DistributionSpec& dist, double t,
                                   std::vector<double> cuts) {
  IntegrabilityProbe probe;
  probe.t = t;
  if (dist.kind == DistributionSpec::Kind::Discrete) {
    double total = 0.0;
    for (const auto& a : dist.atoms) total += a.prob * std::fabs(fn(a.value));
    probe.truncated_values = {total};
    probe.verdict = std::isfinite(total) ? IntegrabilityProbe::Verdict::Finite
                                         : IntegrabilityProbe::Verdict::Diverging;
    return probe;
  }
  require_integrable_kind(dist);

  auto window_piece = [&](double a, double b) {
    auto g = [&](double x) { return std::fabs(fn(x)) * dist.pdf(x); };
    std::vector<double> inner;
    for (double c : cuts)
      if (c > a && c < b) inner.push_back(c);
    std::sort(inner.begin(), inner.end());
    double total = 0.0, lo = a;
    for (double c : inner) {
      total += integrate_fixed(g, lo, c, 201);
      lo = c;
    }
    return total + integrate_fixed(g, lo, b, 201);
  };

  double lo_b = dist.support.lo, hi_b = dist.support.hi;
  if (std::isfinite(lo_b) && std::isfinite(hi_b)) {
    double v = window_piece(lo_b, hi_b);
    probe.truncated_values = {v};
    probe.verdict = std::isfinite(v) ? IntegrabilityProbe::Verdict::Finite
                                     : IntegrabilityProbe::Verdict::Diverging;
    return probe;
  }

  double center = dist.median;
  double lo = std::isfinite(lo_b) ? lo_b : center - 1.0;
  double hi = std::isfinite(hi_b) ? hi_b : center + 1.0;
  double partial = window_piece(lo, hi);
  probe.truncated_values.push_back(partial);
  double prev_inc = 0.0;
  int grow_streak = 0;
  for (int k = 0; k < 48; ++k) {
    double new_lo = lo, new_hi = hi;
    double inc = 0.0;
    if (!std::isfinite(lo_b)) {
      new_lo = center - (center - lo) * 2.0;
      inc += window_piece(new_lo, lo);
    }
    if (!std::isfinite(hi_b)) {
      new_hi = center + (hi - center) * 2.0;
      inc += window_piece(hi, new_hi);
    }
    lo = new_lo;
    hi = new_hi;
    partial += inc;
    probe.truncated_values.push_back(partial);
    if (!std::isfinite(partial)) {
      probe.verdict = IntegrabilityProbe::Verdict::Diverging;
      return probe;
    }
    // Divergence means sustained geometric growth of the window increments;
    // a single jump can just be the density bulk entering the window.
    if (prev_inc > 1e-300 && inc > 2.0 * prev_inc) ++grow_streak;
    else grow_streak = 0;
    prev_inc = inc;
    if (grow_streak >= 2) {
      probe.verdict = IntegrabilityProbe::Verdict::Diverging;
      return probe;
    }
  }
  // No growth detected across the full window schedule: finite when the
  // tail increments have died out, inconclusive otherwise.  Deciding early
  // would misread integrands whose divergence only enters far windows.
  std::size_t m = probe.truncated_values.size();
  bool cauchy = m >= 4;
  for (std::size_t j = m - 3; cauchy && j < m; ++j) {
    double d = probe.truncated_values[j] - probe.truncated_values[j - 1];
    double scale = std::max(std::fabs(probe.truncated_values[j]), 1e-300);
    if (std::fabs(d) / scale >= 1e-8) cauchy = false;
  }
  probe.verdict = cauchy ? IntegrabilityProbe::Verdict::Finite
                         : IntegrabilityProbe::Verdict::Inconclusive;
  return probe;
}

std::vector<double> deviation_cuts(const Deviation& dev, double t) {
  std::vector<double> cuts = dev.x_kinks;
  cuts.push_back(t);  // D(.,t) typically changes character at x = t
  return cuts;
}

// g(t) without the integrability gate; used inside iterative searches where
// the caller probes the bracket once up front.
double g_raw(const Deviation& dev, const DistributionSpec& dist, double t,
             const QuadratureConfig& cfg) {
  auto f = [&](double x) { return dev(x, t); };
  if (dist.kind == DistributionSpec::Kind::Discrete) {
    double total = 0.0;
    for (const auto& a : dist.atoms) total += a.prob * f(a.value);
    return total;
  }
  require_integrable_kind(dist);
  return density_expect(f, dist, dist.support.lo, dist.support.hi,
                        deviation_cuts(dev, t), cfg);
}

// rho(x,t) = integral_x^t -D(x,s) ds; fixed Simpson with one Richardson
// refinement — the oracle only needs ~1e-6 accuracy.
double rho(const Deviation& dev, double x, double t) {
  if (x == t) return 0.0;
  auto f = [&](double s) { return -dev(x, s); };
  double c = integrate_fixed(f, x, t, 31);
  double fine = integrate_fixed(f, x, t, 61);
  return fine + (fine - c) / 15.0;
}

double argmin_refine(const std::function<double(double)>& objective,
                     const std::vector<double>& t_grid) {
  if (t_grid.size() < 3) throw GridTooCoarse("need at least 3 grid points");
  std::size_t best = 0;
  double best_v = objective(t_grid[0]);
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    double v = objective(t_grid[i]);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  if (best == 0 || best + 1 == t_grid.size())
    throw GridTooCoarse("minimum at grid boundary; widen t_grid");
  double a = t_grid[best - 1], b = t_grid[best + 1];
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = objective(x1), f2 = objective(x2);
  while (b - a > 1e-6 * (1.0 + std::fabs(a))) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = objective(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = objective(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double expect(const std::function<double(double)>& f,
              const DistributionSpec& dist, const QuadratureConfig& cfg) {
  if (dist.kind == DistributionSpec::Kind::Discrete) {
    double total = 0.0;
    for (const auto& a : dist.atoms) total += a.prob * f(a.value);
    return total;
  }
  require_integrable_kind(dist);
  return density_expect(f, dist, dist.support.lo, dist.support.hi, {}, cfg);
}

double expect_on(const std::function<double(double)>& f,
                 const DistributionSpec& dist, double a, double b,
                 const QuadratureConfig& cfg) {
  if (dist.kind == DistributionSpec::Kind::Discrete) {
    double total = 0.0;
    for (const auto& at : dist.atoms)
      if (at.value >= a && at.value <= b) total += at.prob * f(at.value);
    return total;
  }
  require_integrable_kind(dist);
  double lo = std::max(a, dist.support.lo), hi = std::min(b, dist.support.hi);
  if (!(lo < hi)) return 0.0;
  return density_expect(f, dist, lo, hi, {}, cfg);
}

IntegrabilityProbe integrability_probe(const Deviation& dev,
                                       const DistributionSpec& dist, double t,
                                       const QuadratureConfig& cfg) {
  (void)cfg;
  if (!dev.domain.contains(t))
    throw DomainViolation("t outside the deviation domain");
  return probe_integrand([&](double x) { return dev(x, t); }, dist, t,
                         deviation_cuts(dev, t));
}

IntegrabilityProbe probe_expectation(const std::function<double(double)>& f,
                                     const DistributionSpec& dist,
                                     const QuadratureConfig& cfg) {
  (void)cfg;
  return probe_integrand(f, dist, 0.0, {});
}

double expect_deviation(const Deviation& dev, const DistributionSpec& dist,
                        double t, const QuadratureConfig& cfg) {
  if (!dev.domain.contains(t))
    throw DomainViolation("t outside the deviation domain");
  if (dist.kind == DistributionSpec::Kind::Density &&
      (!dist.support.lo_finite() || !dist.support.hi_finite())) {
    auto probe = integrability_probe(dev, dist, t, cfg);
    if (probe.diverging())
      throw Divergent("E|D(xi,t)| diverges at t = " + std::to_string(t));
  }
  return g_raw(dev, dist, t, cfg);
}

PopulationMeanResult population_mean(const Deviation& dev,
                                     const DistributionSpec& dist,
                                     const Interval& search,
                                     const QuadratureConfig& cfg) {
  if (search.lo < dev.domain.lo || search.hi > dev.domain.hi)
    throw DomainViolation("search interval exceeds the deviation domain");

  // Searchable endpoints: closed finite ends are reachable; open or infinite
  // ends are approached up to a large finite cap.
  const double cap = 1e15;
  double lo_edge = search.lo_finite()
                       ? (search.lo_open ? search.lo + 1e-12 * (1.0 + std::fabs(search.lo))
                                         : search.lo)
                       : -cap;
  double hi_edge = search.hi_finite()
                       ? (search.hi_open ? search.hi - 1e-12 * (1.0 + std::fabs(search.hi))
                                         : search.hi)
                       : cap;

  double start = dist.median;
  if (!(start > lo_edge && start < hi_edge))
    start = std::clamp(0.5 * (lo_edge + std::min(hi_edge, lo_edge + 2.0)),
                       lo_edge, hi_edge);

  auto g = [&](double t) { return g_raw(dev, dist, t, cfg); };
  auto diverges = [&](double t) {
    return integrability_probe(dev, dist, t, cfg).diverging();
  };

  // The integrability interval may be smaller than the search interval; the
  // search is meaningful only where E|D(xi,t)| is finite.
  if (diverges(start)) {
    bool found = false;
    double step0 = 0.5 * (1.0 + std::fabs(start));
    for (int j = 0; j < 40 && !found; ++j) {
      for (double dir : {1.0, -1.0}) {
        double c = std::clamp(start + dir * step0, lo_edge, hi_edge);
        if (c != start && !diverges(c)) {
          start = c;
          found = true;
          break;
        }
      }
      step0 *= 2.0;
    }
    if (!found) throw Divergent("E|D(xi,t)| diverges over the whole search region");
  }

  // Shrink the searchable edges to the integrability boundary by bisection.
  auto find_boundary = [&](double good, double bad) {
    for (int i = 0; i < 60 && std::fabs(bad - good) >
                                  1e-12 * (1.0 + std::fabs(good));
         ++i) {
      double mid = 0.5 * (good + bad);
      (diverges(mid) ? bad : good) = mid;
    }
    return good;
  };
  if (lo_edge < start && diverges(lo_edge))
    lo_edge = find_boundary(start, lo_edge);
  if (hi_edge > start && diverges(hi_edge))
    hi_edge = find_boundary(start, hi_edge);

  // A quadrature blowup at a candidate marks de-facto non-integrability
  // there, i.e. the searchable region ends before that point.
  auto g_or_boundary = [&](double t, const char* msg) {
    try {
      return g(t);
    } catch (const QuadratureBudgetExceeded&) {
      throw NoRootInDomain(msg);
    }
  };

  double lo = start, hi = start;
  double g_lo = g(start), g_hi = g_lo;
  double step = 0.5 * (1.0 + std::fabs(start));
  // g is strictly decreasing: positive values lie left of the root.
  while (g_hi > 0.0) {
    if (hi >= hi_edge)
      throw NoRootInDomain("E D(xi,t) stays positive up to the search boundary");
    lo = hi;
    g_lo = g_hi;
    hi = std::min(hi + step, hi_edge);
    step *= 2.0;
    g_hi = g_or_boundary(
        hi, "E D(xi,t) stays positive up to the searchable boundary");
  }
  step = 0.5 * (1.0 + std::fabs(start));
  while (g_lo < 0.0) {
    if (lo <= lo_edge)
      throw NoRootInDomain("E D(xi,t) stays negative down to the search boundary");
    hi = lo;
    g_hi = g_lo;
    lo = std::max(lo - step, lo_edge);
    step *= 2.0;
    g_lo = g_or_boundary(
        lo, "E D(xi,t) stays negative down to the searchable boundary");
  }

  double scale = std::max({std::fabs(g_lo), std::fabs(g_hi), 1.0});
  auto root = solve_decreasing(g, lo, hi, g_lo, g_hi, scale);

  PopulationMeanResult result;
  result.t0 = root.root;
  result.residual = std::fabs(g(root.root));
  result.probe = integrability_probe(dev, dist, result.t0, cfg);

  double eps = 1e-6 * (1.0 + std::fabs(result.t0));
  double t_minus = result.t0 - eps, t_plus = result.t0 + eps;
  bool interior = search.contains(t_minus) && search.contains(t_plus) &&
                  dev.domain.contains(t_minus) && dev.domain.contains(t_plus);
  if (interior) {
    interior = !integrability_probe(dev, dist, t_minus, cfg).diverging() &&
               !integrability_probe(dev, dist, t_plus, cfg).diverging();
  }
  result.interior_point = interior;
  return result;
}

double quasi_arithmetic_expected_value(const Generator& f,
                                       const DistributionSpec& dist,
                                       const QuadratureConfig& cfg) {
  if (dist.kind == DistributionSpec::Kind::Density &&
      (!dist.support.lo_finite() || !dist.support.hi_finite())) {
    if (probe_integrand(f.fn, dist, 0.0, {}).diverging())
      throw Divergent("E|f(xi)| diverges");
  }
  double m = expect(f.fn, dist, cfg);
  double t = f.inverse(m);
  double slack = 1e-9 * (1.0 + std::fabs(t));
  if (!std::isfinite(t) || t < f.domain.lo - slack || t > f.domain.hi + slack)
    throw InverseDomain("E f(xi) fell outside the range of f");
  return t;
}

double bajraktarevic_expected_value(const Generator& f, const Weight& p,
                                    const DistributionSpec& dist,
                                    const QuadratureConfig& cfg) {
  auto pf = [&](double x) { return p(x) * f(x); };
  if (dist.kind == DistributionSpec::Kind::Density &&
      (!dist.support.lo_finite() || !dist.support.hi_finite())) {
    if (probe_integrand(p.fn, dist, 0.0, {}).diverging() ||
        probe_integrand(pf, dist, 0.0, {}).diverging())
      throw Divergent("E p(xi) or E p(xi)|f(xi)| diverges");
  }
  double ep = expect(p.fn, dist, cfg);
  double epf = expect(pf, dist, cfg);
  if (!(ep > 0.0)) throw NonpositiveWeight("E p(xi) must be positive");
  double t = f.inverse(epf / ep);
  double slack = 1e-9 * (1.0 + std::fabs(t));
  if (!std::isfinite(t) || t < f.domain.lo - slack || t > f.domain.hi + slack)
    throw InverseDomain("weighted mean of f fell outside the range of f");
  return t;
}

double argmin_oracle(const Deviation& dev, const DistributionSpec& dist,
                     const std::vector<double>& t_grid,
                     const QuadratureConfig& cfg) {
  if (dist.kind == DistributionSpec::Kind::Discrete) {
    auto objective = [&](double t) {
      double total = 0.0;
      for (const auto& a : dist.atoms) total += a.prob * rho(dev, a.value, t);
      return total;
    };
    return argmin_refine(objective, t_grid);
  }
  require_integrable_kind(dist);

  // Adaptive expectation of the energy; splitting at t keeps the kink of
  // rho off the panel interiors.  A fixed uniform window would misresolve
  // heavy-tailed densities whose mass sits far from the tail cutoff.
  auto objective = [&](double t) {
    auto f = [&](double x) { return rho(dev, x, t); };
    return density_expect(f, dist, dist.support.lo, dist.support.hi,
                          deviation_cuts(dev, t), cfg);
  };
  return argmin_refine(objective, t_grid);
}

double argmin_oracle(const Deviation& dev, const std::vector<double>& sample,
                     const std::vector<double>& t_grid) {
  if (sample.empty()) throw EmptySample("argmin oracle needs a sample");
  auto objective = [&](double t) {
    double total = 0.0;
    for (double x : sample) total += rho(dev, x, t);
    return total;
  };
  return argmin_refine(objective, t_grid);
}

}  // namespace devmean
