#ifndef DEVMEAN_DEVIATION_HPP
#define DEVMEAN_DEVIATION_HPP

#include <functional>
#include <string>
#include <vector>

#include "devmean/interval.hpp"

namespace devmean {

// A deviation D on I^2: D(t,t) = 0 and t |-> D(x,t) strictly decreasing and
// continuous for each fixed x.  d2 is the analytic partial derivative in the
// second argument when available.  x_kinks lists points where x |-> D(x,t)
// is discontinuous or non-smooth, so that quadrature can split there.
struct Deviation {
  std::string name;
  Interval domain;
  std::function<double(double, double)> eval;
  std::function<double(double, double)> d2;  // may be empty
  std::vector<double> x_kinks;

  double operator()(double x, double t) const { return eval(x, t); }
  bool has_d2() const { return static_cast<bool>(d2); }
};

struct AxiomReport {
  double diagonal_max_abs = 0.0;
  long monotone_violations = 0;
  std::size_t x_grid_size = 0;
  std::size_t t_grid_size = 0;
  double tol = 0.0;
  bool pass = false;
};

// Grid-based check of the deviation axioms: |D(t,t)| <= tol on t_grid and
// strict decrease of t |-> D(x,t) along t_grid for every x in x_grid.
// Exact zero differences between consecutive t's count as violations.
AxiomReport check_deviation_axioms(const Deviation& dev,
                                   const std::vector<double>& x_grid,
                                   const std::vector<double>& t_grid,
                                   double tol = 1e-12);

// Chebyshev-spaced grid of n points strictly inside [a, b].
std::vector<double> chebyshev_grid(double a, double b, std::size_t n);

// Default 64-point grid clipped to a finite subinterval of the domain.
std::vector<double> default_grid(const Interval& domain, std::size_t n = 64,
                                 double clip = 10.0);

}  // namespace devmean

#endif
