#ifndef DEVMEAN_QUADRATURE_HPP
#define DEVMEAN_QUADRATURE_HPP

#include <functional>

namespace devmean {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
  double tail_cut = 1e-14;  // mass ignored beyond probe windows
};

// Adaptive Simpson over [a, b] (finite).  Throws QuadratureBudgetExceeded
// (carrying the best estimate and error bound) when the subdivision budget
// runs out before the tolerance is met.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, const QuadratureConfig& cfg);

// Integral over (a, b) where either endpoint may be infinite; infinite tails
// are mapped algebraically onto (0, 1) before adaptive integration.
double integrate_interval(const std::function<double(double)>& f, double a,
                          double b, const QuadratureConfig& cfg);

// Fixed composite Simpson with n panels (n even); no error control.
double integrate_fixed(const std::function<double(double)>& f, double a,
                       double b, int points);

}  // namespace devmean

#endif
