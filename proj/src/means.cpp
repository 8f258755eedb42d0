#include "devmean/means.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "devmean/errors.hpp"

namespace devmean {

namespace generators {

Generator identity() {
  Generator g;
  g.name = "identity";
  g.domain = Interval::whole_line();
  g.fn = [](double x) { return x; };
  g.inverse = [](double y) { return y; };
  g.deriv = [](double) { return 1.0; };
  return g;
}

Generator ln() {
  Generator g;
  g.name = "ln";
  g.domain = Interval::open(0.0, std::numeric_limits<double>::infinity());
  g.fn = [](double x) { return std::log(x); };
  g.inverse = [](double y) { return std::exp(y); };
  g.deriv = [](double x) { return 1.0 / x; };
  return g;
}

Generator exp() {
  Generator g;
  g.name = "exp";
  g.domain = Interval::whole_line();
  g.fn = [](double x) { return std::exp(x); };
  g.inverse = [](double y) { return std::log(y); };
  g.deriv = [](double x) { return std::exp(x); };
  return g;
}

Generator power(double r) {
  Generator g;
  g.name = "power(" + std::to_string(r) + ")";
  g.domain = Interval::open(0.0, std::numeric_limits<double>::infinity());
  g.increasing = r > 0.0;
  g.fn = [r](double x) { return std::pow(x, r); };
  g.inverse = [r](double y) { return std::pow(y, 1.0 / r); };
  g.deriv = [r](double x) { return r * std::pow(x, r - 1.0); };
  return g;
}

Generator affine(double a, double b) {
  Generator g;
  g.name = "affine";
  g.domain = Interval::whole_line();
  g.increasing = a > 0.0;
  g.fn = [a, b](double x) { return a * x + b; };
  g.inverse = [a, b](double y) { return (y - b) / a; };
  g.deriv = [a](double) { return a; };
  return g;
}

}  // namespace generators

namespace weights {

Weight one() { return {"one", [](double) { return 1.0; }}; }
Weight identity() { return {"identity", [](double x) { return x; }}; }
Weight power(double r) {
  return {"power(" + std::to_string(r) + ")",
          [r](double x) { return std::pow(x, r); }};
}

}  // namespace weights

static void require_in_domain(const Generator& f, const std::vector<double>& xs) {
  for (double x : xs)
    if (!f.domain.contains(x))
      throw DomainViolation("sample point outside generator domain");
}

double quasi_arithmetic_mean(const Generator& f, const std::vector<double>& xs) {
  if (xs.empty()) throw EmptySample("quasi_arithmetic_mean of empty sample");
  require_in_domain(f, xs);
  double acc = 0.0;
  for (double x : xs) acc += f(x);
  return f.inverse(acc / static_cast<double>(xs.size()));
}

double bajraktarevic_mean(const Generator& f, const Weight& p,
                          const std::vector<double>& xs) {
  if (xs.empty()) throw EmptySample("bajraktarevic_mean of empty sample");
  require_in_domain(f, xs);
  double num = 0.0, den = 0.0;
  for (double x : xs) {
    double w = p(x);
    if (!(w > 0.0)) throw NonpositiveWeight("weight must be positive");
    num += w * f(x);
    den += w;
  }
  return f.inverse(num / den);
}

double elementary_symmetric_mean(int k, const std::vector<double>& xs) {
  const int n = static_cast<int>(xs.size());
  if (k < 1 || k > n) throw BadK("need 1 <= k <= n");
  for (double x : xs)
    if (!(x > 0.0)) throw NonpositiveInput("sample must be positive");

  // Normalize by the max so the DP stays in range; e_k(xs) = m^k e_k(xs/m).
  double m = *std::max_element(xs.begin(), xs.end());

  // e[j] accumulates the j-th elementary symmetric polynomial of the
  // normalized prefix, via e_j += y * e_{j-1} in long double.
  std::vector<long double> e(static_cast<std::size_t>(k) + 1, 0.0L);
  e[0] = 1.0L;
  for (double x : xs) {
    long double y = static_cast<long double>(x / m);
    for (int j = std::min(k, n); j >= 1; --j) e[j] += y * e[j - 1];
  }

  // C(n,k) in long double; exact for the sizes used here.
  long double binom = 1.0L;
  for (int j = 1; j <= k; ++j)
    binom = binom * static_cast<long double>(n - k + j) / j;

  long double ratio = e[k] / binom;
  return m * static_cast<double>(std::pow(static_cast<double>(ratio), 1.0 / k));
}

double beta_type_mean(const std::vector<double>& xs) {
  if (xs.size() < 2) throw SampleTooSmall("beta_type_mean needs n >= 2");
  double sum = 0.0, logprod = 0.0;
  for (double x : xs) {
    if (!(x > 0.0)) throw NonpositiveInput("sample must be positive");
    sum += x;
    logprod += std::log(x);
  }
  double n = static_cast<double>(xs.size());
  return std::exp((std::log(n) + logprod - std::log(sum)) / (n - 1.0));
}

std::optional<std::pair<double, double>> sublevel_set_roots(
    const std::vector<double>& lambdas, const std::vector<double>& xs) {
  if (lambdas.size() != xs.size() || lambdas.empty())
    throw EmptySample("lambdas and xs must be nonempty and equal length");
  double s = 0.0, sx = 0.0, sx2 = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    s += lambdas[i];
    sx += lambdas[i] * xs[i];
    sx2 += lambdas[i] * xs[i] * xs[i];
  }
  if (s == 0.0)
    throw ZeroLeadingCoefficient("sum of lambdas must be nonzero");
  // -s t^2 - sx t + 2 sx2 = 0
  double disc = sx * sx + 8.0 * s * sx2;
  if (disc < 0.0) return std::nullopt;
  double r = std::sqrt(disc);
  double t1 = (-sx + r) / (2.0 * s);
  double t2 = (-sx - r) / (2.0 * s);
  if (t1 > t2) std::swap(t1, t2);
  return std::make_pair(t1, t2);
}

}  // namespace devmean
