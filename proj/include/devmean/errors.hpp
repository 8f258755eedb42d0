#ifndef DEVMEAN_ERRORS_HPP
#define DEVMEAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace devmean {

// Base for all computational errors.  The code is a stable machine-readable
// identifier (the CLI emits it in its JSON error objects).
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

#define DEVMEAN_DEFINE_ERROR(Name)                          \
  class Name : public Error {                               \
  public:                                                   \
    explicit Name(const std::string& message)               \
        : Error(#Name, message) {}                          \
  }

DEVMEAN_DEFINE_ERROR(EmptySample);
DEVMEAN_DEFINE_ERROR(DomainViolation);
DEVMEAN_DEFINE_ERROR(NoConvergence);
DEVMEAN_DEFINE_ERROR(GridOutsideDomain);
DEVMEAN_DEFINE_ERROR(BadK);
DEVMEAN_DEFINE_ERROR(NonpositiveInput);
DEVMEAN_DEFINE_ERROR(SampleTooSmall);
DEVMEAN_DEFINE_ERROR(NonpositiveWeight);
DEVMEAN_DEFINE_ERROR(ZeroLeadingCoefficient);
DEVMEAN_DEFINE_ERROR(SamplerOnlyUnsupported);
DEVMEAN_DEFINE_ERROR(Divergent);
DEVMEAN_DEFINE_ERROR(NoRootInDomain);
DEVMEAN_DEFINE_ERROR(InverseDomain);
DEVMEAN_DEFINE_ERROR(ZeroDerivative);
DEVMEAN_DEFINE_ERROR(DegenerateDistribution);
DEVMEAN_DEFINE_ERROR(BoundaryStep);
DEVMEAN_DEFINE_ERROR(NotBeyondMean);
DEVMEAN_DEFINE_ERROR(FlatObjective);
DEVMEAN_DEFINE_ERROR(OutOfRange);
DEVMEAN_DEFINE_ERROR(GridTooCoarse);
DEVMEAN_DEFINE_ERROR(EmptyInput);
DEVMEAN_DEFINE_ERROR(UsageError);

#undef DEVMEAN_DEFINE_ERROR

// Adaptive quadrature ran out of subdivisions; carries the best estimate.
class QuadratureBudgetExceeded : public Error {
public:
  QuadratureBudgetExceeded(const std::string& message, double estimate,
                           double error_bound)
      : Error("QuadratureBudgetExceeded", message),
        estimate_(estimate),
        error_bound_(error_bound) {}
  double estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

private:
  double estimate_;
  double error_bound_;
};

}  // namespace devmean

#endif
