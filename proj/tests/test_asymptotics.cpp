#include <doctest.h>

#include <cmath>
#include <vector>

#include "devmean/asymptotics.hpp"
#include "devmean/deviations.hpp"
#include "devmean/distribution.hpp"
#include "devmean/errors.hpp"
#include "devmean/population.hpp"

using namespace devmean;

TEST_CASE("second-argument derivative: analytic and difference paths agree") {
  auto lin = deviations::linear();
  CHECK(d2_deviation(lin, 3.0, 1.0) == doctest::Approx(-1.0));

  auto qe = deviations::quadratic_example();  // d2 = -x - 2t
  CHECK(d2_deviation(qe, 2.0, 1.5) == doctest::Approx(-5.0));

  auto baj = make_bajraktarevic_deviation(generators::ln(), weights::one());
  CHECK(d2_deviation(baj, 2.0, 4.0) == doctest::Approx(-0.25));

  // Strip the analytic derivative and compare the central difference.
  Deviation fd = qe;
  fd.d2 = nullptr;
  CHECK(d2_deviation(fd, 2.0, 1.5) == doctest::Approx(-5.0).epsilon(1e-5));

  Deviation narrow;
  narrow.name = "narrow";
  narrow.domain = Interval::closed(0.0, 1e-8);
  narrow.eval = [](double x, double t) { return x - t; };
  CHECK_THROWS_AS(d2_deviation(narrow, 5e-9, 5e-9), BoundaryStep);
}

TEST_CASE("asymptotic constants for the linear deviation are the variance") {
  auto k = asymptotic_constants(deviations::linear(),
                                distributions::exponential(1.0));
  CHECK(k.t0 == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(k.m2 == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(k.d1 == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(k.sigma2 == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(k.lil_c == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("asymptotic constants for the quadratic deviation under Exp(1)") {
  auto k = asymptotic_constants(deviations::quadratic_example(),
                                distributions::exponential(1.0));
  double t0 = (-1.0 + std::sqrt(17.0)) / 2.0;
  CHECK(k.t0 == doctest::Approx(t0).epsilon(1e-9));
  CHECK(k.d1 == doctest::Approx(std::sqrt(17.0)).epsilon(1e-8));
  CHECK(k.m2 == doctest::Approx(-17.0 * t0 + 84.0).epsilon(1e-7));
}

TEST_CASE("a point mass has no nondegenerate limit law") {
  CHECK_THROWS_AS(asymptotic_constants(deviations::linear(),
                                       distributions::pointmass(2.0)),
                  DegenerateDistribution);
}

TEST_CASE("closed-form Bajraktarevic variance matches the generic one") {
  auto exp1 = distributions::exponential(1.0);
  // identity generator, unit weight: plain CLT variance of Exp(1).
  CHECK(bajraktarevic_sigma2(generators::identity(), weights::one(), exp1) ==
        doctest::Approx(1.0).epsilon(1e-6));

  auto logn = distributions::lognormal(0.0, 1.0);
  // geometric mean of lognormal(0,1): B = 1, Var(ln xi) = 1, f'(1) = 1.
  CHECK(bajraktarevic_sigma2(generators::ln(), weights::one(), logn) ==
        doctest::Approx(1.0).epsilon(1e-6));

  for (const auto& [f, p] :
       {std::pair{generators::identity(), weights::identity()},
        std::pair{generators::power(2.0), weights::one()}}) {
    double closed = bajraktarevic_sigma2(f, p, exp1);
    auto dev = make_bajraktarevic_deviation(f, p);
    auto k = asymptotic_constants(dev, exp1);
    CHECK(closed == doctest::Approx(k.sigma2).epsilon(1e-6));
  }
}

TEST_CASE("scaling the deviation by a positive function of t changes nothing") {
  auto qe = deviations::quadratic_example();
  Deviation scaled = qe;
  scaled.name = "scaled";
  // D*(x,t) = (1 + t^2) D(x,t); product rule for the t-derivative.
  scaled.eval = [qe](double x, double t) { return (1.0 + t * t) * qe(x, t); };
  scaled.d2 = [qe](double x, double t) {
    return 2.0 * t * qe(x, t) + (1.0 + t * t) * qe.d2(x, t);
  };

  std::vector<double> xs{0.8, 1.4, 3.0};
  CHECK(deviation_mean(scaled, xs).root ==
        doctest::Approx(deviation_mean(qe, xs).root).epsilon(1e-9));

  auto exp1 = distributions::exponential(1.0);
  auto k0 = asymptotic_constants(qe, exp1);
  auto k1 = asymptotic_constants(scaled, exp1);
  CHECK(k1.t0 == doctest::Approx(k0.t0).epsilon(1e-9));
  CHECK(k1.sigma2 == doctest::Approx(k0.sigma2).epsilon(1e-8));
  CHECK(k1.lil_c == doctest::Approx(k0.lil_c).epsilon(1e-8));
}

TEST_CASE("moment generating function of the deviation transform") {
  auto lin = deviations::linear();
  auto coin = distributions::bernoulli(0.5);
  // E e^{1 * (xi - 3/4)} = e^{-3/4} (1 + e) / 2.
  CHECK(mgf_phi(lin, coin, 1.0, 0.75) ==
        doctest::Approx(std::exp(-0.75) * (1.0 + std::exp(1.0)) / 2.0)
            .epsilon(1e-12));
  CHECK(mgf_phi(lin, coin, 1e-8, 0.75) == doctest::Approx(1.0).epsilon(1e-6));

  auto tn = distributions::truncated_normal(4.0);
  for (double c : {0.5, 1.0, 2.0}) {
    CHECK(mgf_phi(lin, tn, c, 0.0) ==
          doctest::Approx(truncated_normal_mgf(c, 4.0)).epsilon(1e-7));
  }
  CHECK_THROWS_AS(mgf_phi(lin, coin, -1.0, 0.75), DomainViolation);
}

TEST_CASE("log of the mgf is convex in c") {
  auto lin = deviations::linear();
  auto tn = distributions::truncated_normal(4.0);
  for (double a : {0.1, 0.5, 2.0}) {
    double b = a + 1.0, m = a + 0.5;
    double la = std::log(mgf_phi(lin, tn, a, 0.0));
    double lb = std::log(mgf_phi(lin, tn, b, 0.0));
    double lm = std::log(mgf_phi(lin, tn, m, 0.0));
    CHECK(lm <= 0.5 * (la + lb) + 1e-10);
  }
}

TEST_CASE("large deviation rate of a fair coin beyond 3/4") {
  auto lin = deviations::linear();
  auto coin = distributions::bernoulli(0.5);
  auto r = ld_rate(lin, coin, 0.75);
  // KL(3/4 || 1/2) = 3/4 ln(3/2) + 1/4 ln(1/2), about 0.130812.
  double gamma = 0.75 * std::log(1.5) + 0.25 * std::log(0.5);
  CHECK(r.gamma == doctest::Approx(gamma).epsilon(1e-8));
  CHECK(r.c_star == doctest::Approx(std::log(3.0)).epsilon(1e-6));
  CHECK(r.inf_phi == doctest::Approx(std::exp(-gamma)).epsilon(1e-8));

  CHECK_THROWS_AS(ld_rate(lin, coin, 0.5), NotBeyondMean);
  CHECK_THROWS_AS(ld_rate(lin, coin, 0.25), NotBeyondMean);
  // At the essential supremum the log-mgf decreases toward ln P(xi = 1)
  // and never turns upward.
  CHECK_THROWS_AS(ld_rate(lin, coin, 1.0), FlatObjective);
}

TEST_CASE("rate minimization reports divergence for a heavy-tailed law") {
  // The lognormal tail decays slower than any exponential, so
  // E e^{c (xi - x)} is infinite for every c > 0.
  auto lin = deviations::linear();
  auto logn = distributions::lognormal(0.0, 1.0);
  CHECK_THROWS_AS(ld_rate(lin, logn, 2.0), Divergent);
  // For the quadratic deviation under Exp(1) the transform grows like
  // 2 xi^2 and the probe flags the mgf at moderate c.
  auto qe = deviations::quadratic_example();
  auto exp1 = distributions::exponential(1.0);
  double t0 = (-1.0 + std::sqrt(17.0)) / 2.0;
  CHECK_THROWS_AS(mgf_phi(qe, exp1, 0.1, t0 + 0.5), Divergent);
}

TEST_CASE("uniform law rate matches a dense grid scan") {
  auto lin = deviations::linear();
  auto u = distributions::uniform(0.0, 1.0);
  auto r = ld_rate(lin, u, 0.75);
  // phi(c) = e^{-3c/4} (e^c - 1) / c; brute scan over c.
  double best = 1e300;
  for (double c = 1e-3; c < 60.0; c *= 1.002) {
    double v = std::exp(-0.75 * c) * std::expm1(c) / c;
    best = std::min(best, v);
  }
  CHECK(r.inf_phi == doctest::Approx(best).epsilon(1e-5));
  CHECK(r.gamma == doctest::Approx(-std::log(best)).epsilon(1e-4));
}

TEST_CASE("Cramer rate function") {
  auto coin = distributions::bernoulli(0.5);
  double gamma = 0.75 * std::log(1.5) + 0.25 * std::log(0.5);
  CHECK(cramer_gamma(coin, 0.75) == doctest::Approx(gamma).epsilon(1e-8));
  CHECK(cramer_gamma(coin, 0.5001) == doctest::Approx(0.0).epsilon(1e-4));
  CHECK_THROWS_AS(cramer_gamma(coin, 0.5), OutOfRange);
  CHECK_THROWS_AS(cramer_gamma(coin, 1.0), OutOfRange);

  // Wide truncated normal: the rate is close to y^2/2.
  auto tn = distributions::truncated_normal(8.0);
  for (double y : {0.5, 1.0, 2.0}) {
    CHECK(cramer_gamma(tn, y) ==
          doctest::Approx(y * y / 2.0).epsilon(2e-3));
  }

  // With the linear deviation the two rates are the same object.
  auto lin = deviations::linear();
  auto u = distributions::uniform(0.0, 1.0);
  CHECK(cramer_gamma(u, 0.8) ==
        doctest::Approx(ld_rate(lin, u, 0.8).gamma).epsilon(1e-7));
}
