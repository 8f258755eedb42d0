#include "devmean/quadrature.hpp"

#include <cmath>
#include <limits>

#include "devmean/errors.hpp"

namespace devmean {

namespace {

double safe_eval(const std::function<double(double)>& f, double x) {
  double v = f(x);
  return std::isfinite(v) ? v : 0.0;  // endpoint limits of decaying integrands
}

struct AdaptiveState {
  const std::function<double(double)>* f;
  double abs_tol;
  double rel_tol;
  int budget;
  double scale = 0.0;  // running magnitude for the relative test
};

// Standard adaptive Simpson with Richardson acceptance.
double simpson(double a, double m, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(AdaptiveState& st, double a, double b, double fa, double fm,
             double fb, double whole, int depth, double tol, double& err) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = safe_eval(*st.f, lm), frm = safe_eval(*st.f, rm);
  double left = simpson(a, lm, m, fa, flm, fm);
  double right = simpson(m, rm, b, fm, frm, fb);
  double delta = left + right - whole;
  if (depth > 48 || std::fabs(delta) <= 15.0 * tol) {
    err += std::fabs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  if (--st.budget <= 0) {
    double est = left + right + delta / 15.0;
    err += std::fabs(delta);
    throw QuadratureBudgetExceeded("adaptive quadrature budget exhausted",
                                   est, err);
  }
  double e1 = 0.0, e2 = 0.0;
  double v1 = adapt(st, a, m, fa, flm, fm, left, depth + 1, 0.5 * tol, e1);
  double v2 = adapt(st, m, b, fm, frm, fb, right, depth + 1, 0.5 * tol, e2);
  err += e1 + e2;
  return v1 + v2;
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, const QuadratureConfig& cfg) {
  if (a == b) return 0.0;
  AdaptiveState st{&f, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions};
  double m = 0.5 * (a + b);
  double fa = safe_eval(f, a), fm = safe_eval(f, m), fb = safe_eval(f, b);
  double whole = simpson(a, m, b, fa, fm, fb);
  double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(whole));
  double err = 0.0;
  return adapt(st, a, b, fa, fm, fb, whole, 0, tol, err);
}

double integrate_interval(const std::function<double(double)>& f, double a,
                          double b, const QuadratureConfig& cfg) {
  const double inf = std::numeric_limits<double>::infinity();
  if (a == -inf && b == inf)
    return integrate_interval(f, a, 0.0, cfg) +
           integrate_interval(f, 0.0, b, cfg);
  if (b == inf) {
    // x = a + s/(1-s), dx = ds/(1-s)^2, s in (0,1)
    auto g = [&](double s) {
      if (s >= 1.0) return 0.0;
      double om = 1.0 - s;
      return f(a + s / om) / (om * om);
    };
    return integrate_adaptive(g, 0.0, 1.0, cfg);
  }
  if (a == -inf) {
    auto g = [&](double s) {
      if (s >= 1.0) return 0.0;
      double om = 1.0 - s;
      return f(b - s / om) / (om * om);
    };
    return integrate_adaptive(g, 0.0, 1.0, cfg);
  }
  return integrate_adaptive(f, a, b, cfg);
}

double integrate_fixed(const std::function<double(double)>& f, double a,
                       double b, int points) {
  int n = points | 1;  // odd point count => even panel count
  if (n < 3) n = 3;
  double h = (b - a) / (n - 1);
  double acc = safe_eval(f, a) + safe_eval(f, b);
  for (int i = 1; i < n - 1; ++i)
    acc += safe_eval(f, a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace devmean
