#ifndef DEVMEAN_MEANS_HPP
#define DEVMEAN_MEANS_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "devmean/interval.hpp"

namespace devmean {

// A continuous strictly monotone generator with an explicit inverse.
// Presets carry analytic inverses; user-supplied generators must provide
// their own (no numeric inversion happens here).
struct Generator {
  std::string name;
  Interval domain;
  bool increasing = true;
  std::function<double(double)> fn;
  std::function<double(double)> inverse;
  std::function<double(double)> deriv;  // may be empty

  double operator()(double x) const { return fn(x); }
};

// A positive weight function.
struct Weight {
  std::string name;
  std::function<double(double)> fn;

  double operator()(double x) const { return fn(x); }
};

namespace generators {
Generator identity();
Generator ln();
Generator exp();
Generator power(double r);      // x^r on (0, inf), r != 0
Generator affine(double a, double b);  // a*x + b, a != 0
}  // namespace generators

namespace weights {
Weight one();
Weight identity();
Weight power(double r);
}  // namespace weights

// f^{-1}(average of f(x_i)).
double quasi_arithmetic_mean(const Generator& f, const std::vector<double>& xs);

// f^{-1}( sum p(x_i) f(x_i) / sum p(x_i) ).
double bajraktarevic_mean(const Generator& f, const Weight& p,
                          const std::vector<double>& xs);

// k-th root of e_k(xs) / C(n,k); k=1 is the arithmetic mean, k=n the
// geometric mean, and the chain is nonincreasing in k (Maclaurin).
double elementary_symmetric_mean(int k, const std::vector<double>& xs);

// (n * prod(xs) / sum(xs))^{1/(n-1)}; not repetition invariant.
double beta_type_mean(const std::vector<double>& xs);

// Real roots, in increasing order, of
//   -(sum l_i) t^2 - (sum l_i x_i) t + 2 sum l_i x_i^2 = 0,
// the boundary of the sublevel set {t : sum l_i D(x_i,t) <= 0} for
// D(x,t) = x(x-t) + x^2 - t^2.  nullopt when the discriminant is negative.
std::optional<std::pair<double, double>> sublevel_set_roots(
    const std::vector<double>& lambdas, const std::vector<double>& xs);

}  // namespace devmean

#endif
