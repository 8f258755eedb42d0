#include "devmean/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "devmean/errors.hpp"
#include "devmean/population.hpp"

namespace devmean {

namespace {

const double kInf = std::numeric_limits<double>::infinity();
const double kExpClamp = 700.0;  // exp() overflow guard

double exp_clamped(double a) {
  return a > kExpClamp ? kInf : std::exp(a);
}

// ln phi(c,x) with +inf for divergent expectations; shared by the two
// convex rate searches.
double ln_phi_or_inf(const Deviation& dev, const DistributionSpec& dist,
                     double c, double x, const QuadratureConfig& cfg) {
  auto integrand = [&](double v) { return exp_clamped(c * dev(v, x)); };
  if (dist.kind == DistributionSpec::Kind::Discrete) {
    double total = 0.0;
    for (const auto& a : dist.atoms) {
      double e = integrand(a.value);
      if (!std::isfinite(e)) return kInf;
      total += a.prob * e;
    }
    return std::log(total);
  }
  if (probe_expectation(integrand, dist, cfg).verdict !=
      IntegrabilityProbe::Verdict::Finite)
    return kInf;
  double total = expect(integrand, dist, cfg);
  return std::isfinite(total) ? std::log(total) : kInf;
}

// Minimizes a convex objective over c > 0: geometric marching to bracket the
// minimum, then golden-section.  Infinite values act as +inf barriers.
struct ConvexMin {
  double c_star, value, bracket_lo, bracket_hi;
};

ConvexMin minimize_convex(const std::function<double(double)>& obj) {
  double c0 = 1e-6;
  double v0 = obj(c0);
  if (!std::isfinite(v0)) throw Divergent("objective infinite for every c > 0");

  // March c upward until the objective turns up (or hits +inf).
  double prev_c = c0, prev_v = v0;
  double lo = c0, hi = -1.0;
  double c = 1e-3;
  for (int k = 0; k < 80; ++k) {
    double v = obj(c);
    if (v > prev_v || !std::isfinite(v)) {
      hi = c;
      break;
    }
    lo = prev_c;
    prev_c = c;
    prev_v = v;
    c *= 2.0;
  }
  if (hi < 0.0)
    throw FlatObjective("objective keeps decreasing; infimum at c -> inf");

  double a = lo, b = hi;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = obj(x1), f2 = obj(x2);
  while (b - a > 1e-10 * (1.0 + b)) {
    if (f1 < f2 || !std::isfinite(f2)) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = obj(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = obj(x2);
    }
  }
  double cm = 0.5 * (a + b);
  return {cm, obj(cm), lo, hi};
}

double variance_of(const std::function<double(double)>& f,
                   const DistributionSpec& dist, const QuadratureConfig& cfg,
                   double mean) {
  auto sq = [&](double x) {
    double d = f(x) - mean;
    return d * d;
  };
  return expect(sq, dist, cfg);
}

}  // namespace

double d2_deviation(const Deviation& dev, double x, double t) {
  if (!dev.domain.contains(x) || !dev.domain.contains(t))
    throw DomainViolation("point outside the deviation domain");
  if (dev.has_d2()) return dev.d2(x, t);
  double h = 1e-6 * (1.0 + std::fabs(t));
  bool up = dev.domain.contains(t + h);
  bool down = dev.domain.contains(t - h);
  if (up && down)
    return (dev(x, t + h) - dev(x, t - h)) / (2.0 * h);
  if (up) return (dev(x, t + h) - dev(x, t)) / h;
  if (down) return (dev(x, t) - dev(x, t - h)) / h;
  throw BoundaryStep("difference stencil exits the domain at t = " +
                     std::to_string(t));
}

AsymptoticConstants asymptotic_constants(const Deviation& dev,
                                         const DistributionSpec& dist,
                                         const QuadratureConfig& cfg) {
  auto pop = population_mean(dev, dist, dev.domain, cfg);
  AsymptoticConstants k;
  k.t0 = pop.t0;
  // Quadrature may touch support endpoints lying on the open domain
  // boundary; the density vanishes there, so those stencils contribute 0.
  k.m2 = expect([&](double x) {
    if (!dev.domain.contains(x)) return 0.0;
    double d = dev(x, k.t0);
    return d * d;
  }, dist, cfg);
  k.d1 = expect([&](double x) {
    if (!dev.domain.contains(x)) return 0.0;
    return -d2_deviation(dev, x, k.t0);
  }, dist, cfg);
  if (!(k.m2 > 1e-14))
    throw DegenerateDistribution("E D(xi,t0)^2 vanishes (point mass case)");
  if (!(k.d1 > 0.0))
    throw DegenerateDistribution("E[-d2 D(xi,t0)] must be positive");
  k.sigma2 = k.m2 / (k.d1 * k.d1);
  k.lil_c = std::sqrt(k.m2) / k.d1;
  return k;
}

double bajraktarevic_sigma2(const Generator& f, const Weight& p,
                            const DistributionSpec& dist,
                            const QuadratureConfig& cfg) {
  if (!f.deriv) throw ZeroDerivative("generator has no derivative attached");
  auto pf = [&](double x) { return p(x) * f(x); };
  auto p2 = [&](double x) { double v = p(x); return v * v; };
  auto pf2 = [&](double x) { double v = pf(x); return v * v; };
  if (dist.kind == DistributionSpec::Kind::Density &&
      (!dist.support.lo_finite() || !dist.support.hi_finite())) {
    if (probe_expectation(p2, dist, cfg).diverging() ||
        probe_expectation(pf2, dist, cfg).diverging())
      throw Divergent("second moments of p, pf diverge");
  }
  double ep = expect(p.fn, dist, cfg);
  double epf = expect(pf, dist, cfg);
  double var_p = variance_of(p.fn, dist, cfg, ep);
  double var_pf = variance_of(pf, dist, cfg, epf);
  double cov = expect([&](double x) { return (p(x) - ep) * (pf(x) - epf); },
                      dist, cfg);
  double b = bajraktarevic_expected_value(f, p, dist, cfg);
  double fp = f.deriv(b);
  if (!(std::fabs(fp) > 0.0))
    throw ZeroDerivative("f' vanishes at the Bajraktarevic expected value");
  double num = ep * ep * var_pf + epf * epf * var_p - 2.0 * ep * epf * cov;
  double ep4 = ep * ep * ep * ep;
  return num / (ep4 * fp * fp);
}

double mgf_phi(const Deviation& dev, const DistributionSpec& dist, double c,
               double x, const QuadratureConfig& cfg) {
  if (!(c > 0.0)) throw DomainViolation("mgf evaluation needs c > 0");
  if (!dev.domain.contains(x))
    throw DomainViolation("x outside the deviation domain");
  double lv = ln_phi_or_inf(dev, dist, c, x, cfg);
  if (!std::isfinite(lv)) throw Divergent("E exp(c D(xi,x)) is infinite");
  return std::exp(lv);
}

LDResult ld_rate(const Deviation& dev, const DistributionSpec& dist, double x,
                 const QuadratureConfig& cfg) {
  if (!dev.domain.contains(x))
    throw DomainViolation("x outside the deviation domain");
  double gx = expect_deviation(dev, dist, x, cfg);
  if (gx >= 0.0)
    throw NotBeyondMean("threshold x does not exceed the population mean");
  auto obj = [&](double c) { return ln_phi_or_inf(dev, dist, c, x, cfg); };
  auto m = minimize_convex(obj);
  LDResult r;
  r.x = x;
  r.c_star = m.c_star;
  r.inf_phi = std::exp(m.value);
  r.gamma = -m.value;
  r.bracket_lo = m.bracket_lo;
  r.bracket_hi = m.bracket_hi;
  return r;
}

double cramer_gamma(const DistributionSpec& dist, double y,
                    const QuadratureConfig& cfg) {
  double mean = dist.has_moment(1)
                    ? dist.moment(1)
                    : expect([](double x) { return x; }, dist, cfg);
  if (!(y > mean) || !(y < dist.ess_sup))
    throw OutOfRange("need E xi < y < ess sup xi");
  // sup_c { cy - ln E e^{c xi} } = -inf_c ln E e^{c(xi - y)}
  auto obj = [&](double c) {
    if (dist.kind == DistributionSpec::Kind::Discrete) {
      double total = 0.0;
      for (const auto& a : dist.atoms) {
        double e = exp_clamped(c * (a.value - y));
        if (!std::isfinite(e)) return kInf;
        total += a.prob * e;
      }
      return std::log(total);
    }
    auto integrand = [&](double v) { return exp_clamped(c * (v - y)); };
    if (probe_expectation(integrand, dist, cfg).verdict !=
        IntegrabilityProbe::Verdict::Finite)
      return kInf;
    double total = expect(integrand, dist, cfg);
    return std::isfinite(total) ? std::log(total) : kInf;
  };
  auto m = minimize_convex(obj);
  return -m.value;
}

}  // namespace devmean
