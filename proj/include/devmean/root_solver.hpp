#ifndef DEVMEAN_ROOT_SOLVER_HPP
#define DEVMEAN_ROOT_SOLVER_HPP

#include <functional>

namespace devmean {

struct SolverConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  double residual_tol = 1e-10;
  int max_iter = 200;
};

struct RootResult {
  double root = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Locates the root of a strictly decreasing continuous f on [lo, hi], given
// f(lo) >= 0 >= f(hi).  Bisection safeguarded by regula-falsi (Illinois)
// steps; iterates never leave the bracket.  residual_scale normalizes the
// residual stopping test: converged when the bracket shrinks below
// abs_tol + rel_tol*|root| or |f| <= residual_tol * residual_scale.
// Throws NoConvergence when the iteration budget is exhausted.
RootResult solve_decreasing(const std::function<double(double)>& f, double lo,
                            double hi, double f_lo, double f_hi,
                            double residual_scale,
                            const SolverConfig& cfg = {});

}  // namespace devmean

#endif
