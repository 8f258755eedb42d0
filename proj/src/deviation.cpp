#include "devmean/deviation.hpp"

#include <cmath>

#include "devmean/errors.hpp"

namespace devmean {

std::vector<double> chebyshev_grid(double a, double b, std::size_t n) {
  std::vector<double> g(n);
  const double pi = 3.14159265358979323846;
  for (std::size_t i = 0; i < n; ++i) {
    // Chebyshev nodes, ascending; all strictly inside (a, b).
    double c = std::cos(pi * (2.0 * (n - i) - 1.0) / (2.0 * n));
    g[i] = 0.5 * (a + b) + 0.5 * (b - a) * c;
  }
  return g;
}

std::vector<double> default_grid(const Interval& domain, std::size_t n,
                                 double clip) {
  double a = domain.finite_lo(clip);
  double b = domain.finite_hi(clip);
  return chebyshev_grid(a, b, n);
}

AxiomReport check_deviation_axioms(const Deviation& dev,
                                   const std::vector<double>& x_grid,
                                   const std::vector<double>& t_grid,
                                   double tol) {
  for (double x : x_grid)
    if (!dev.domain.contains(x))
      throw GridOutsideDomain("x grid point outside deviation domain");
  for (double t : t_grid)
    if (!dev.domain.contains(t))
      throw GridOutsideDomain("t grid point outside deviation domain");

  AxiomReport rep;
  rep.x_grid_size = x_grid.size();
  rep.t_grid_size = t_grid.size();
  rep.tol = tol;

  for (double t : t_grid)
    rep.diagonal_max_abs = std::max(rep.diagonal_max_abs, std::fabs(dev(t, t)));

  // Strict decrease: D(x, t_i) > D(x, t_j) for t_i < t_j; zero differences
  // count as violations.
  for (double x : x_grid) {
    double prev = dev(x, t_grid.front());
    for (std::size_t j = 1; j < t_grid.size(); ++j) {
      double cur = dev(x, t_grid[j]);
      if (!(prev > cur)) ++rep.monotone_violations;
      prev = cur;
    }
  }

  rep.pass = rep.diagonal_max_abs <= tol && rep.monotone_violations == 0;
  return rep;
}

}  // namespace devmean
