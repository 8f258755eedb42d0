#include "devmean/root_solver.hpp"

#include <algorithm>
#include <cmath>

#include "devmean/errors.hpp"

namespace devmean {

RootResult solve_decreasing(const std::function<double(double)>& f, double lo,
                            double hi, double f_lo, double f_hi,
                            double residual_scale, const SolverConfig& cfg) {
  RootResult res;
  res.bracket_lo = lo;
  res.bracket_hi = hi;

  const double res_tol = cfg.residual_tol * std::max(residual_scale, 0.0);

  auto finish = [&](double root, double fr, bool ok) {
    res.root = root;
    res.residual = fr;
    res.converged = ok;
    return res;
  };

  if (f_lo == 0.0) return finish(lo, 0.0, true);
  if (f_hi == 0.0) return finish(hi, 0.0, true);

  double a = lo, b = hi, fa = f_lo, fb = f_hi;
  // Illinois weighting: halve the retained endpoint value when the same side
  // survives twice, preventing regula-falsi stagnation.
  int side = 0;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    res.iterations = it;
    double mid;
    if (fa > fb) {
      mid = (a * fb - b * fa) / (fb - fa);  // secant through the bracket
    } else {
      mid = 0.5 * (a + b);
    }
    double width = b - a;
    // Keep the candidate safely interior; fall back to bisection otherwise.
    if (!(mid > a + 0.01 * width && mid < b - 0.01 * width))
      mid = 0.5 * (a + b);

    double fm = f(mid);
    if (!std::isfinite(fm))
      throw NoConvergence("objective not finite inside bracket");
    if (fm == 0.0 || std::fabs(fm) <= res_tol) {
      res.bracket_lo = a;
      res.bracket_hi = b;
      return finish(mid, fm, true);
    }
    if (fm > 0.0) {
      a = mid;
      fa = fm;
      if (side == +1) fb *= 0.5;
      side = +1;
    } else {
      b = mid;
      fb = fm;
      if (side == -1) fa *= 0.5;
      side = -1;
    }
    res.bracket_lo = a;
    res.bracket_hi = b;
    double root = 0.5 * (a + b);
    if (b - a <= cfg.abs_tol + cfg.rel_tol * std::fabs(root))
      return finish(root, f(root), true);
  }
  throw NoConvergence("root bracketing exhausted the iteration budget");
}

}  // namespace devmean
