#ifndef DEVMEAN_RNG_HPP
#define DEVMEAN_RNG_HPP

#include <cstdint>

namespace devmean {

// Counter-based generator: the i-th output is a stateless hash of
// (seed, stream, i).  Streams derived from the same seed are independent,
// so replication r can own stream r and results do not depend on the
// execution order of replications.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double u01();       // uniform on (0, 1)
  double normal();    // standard normal (Box-Muller, two u01 per call)

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace devmean

#endif
