#ifndef DEVMEAN_DEVIATIONS_HPP
#define DEVMEAN_DEVIATIONS_HPP

#include <map>
#include <string>
#include <vector>

#include "devmean/deviation.hpp"
#include "devmean/means.hpp"
#include "devmean/root_solver.hpp"

namespace devmean {

// The unique root of sum_i D(x_i, t) = 0, located inside [min xs, max xs].
// An all-equal sample short-circuits to the common value without iteration.
RootResult deviation_mean(const Deviation& dev, const std::vector<double>& xs,
                          const SolverConfig& cfg = {});

// D(x,t) = p(x)(f(x) - f(t)); its deviation mean is the Bajraktarevic mean.
// For a decreasing generator the sign is flipped, which leaves the mean
// unchanged and restores axiom (i).
Deviation make_bajraktarevic_deviation(const Generator& f, const Weight& p);

namespace deviations {
Deviation linear();                       // x - t on R
Deviation power(double p);                // sign(x-t) |x-t|^p on R
Deviation quadratic_example();            // x(x-t) + x^2 - t^2 on (0, inf)
Deviation ex1v();                         // the piecewise exponential on [-2, inf)
Deviation quasi_arithmetic(const Generator& f);  // f(x) - f(t)
}  // namespace deviations

// Registry lookup: "linear", "power" (p), "quadratic-example", "ex1v",
// "qa" (f), "baj" (f, p).  Generator/weight parameter values use the
// name(args) form, e.g. f=power(2).
Deviation make_deviation(const std::string& name,
                         const std::map<std::string, std::string>& params);

Generator make_generator(const std::string& spec);
Weight make_weight(const std::string& spec);

}  // namespace devmean

#endif
