#include "devmean/interval.hpp"

#include <sstream>

namespace devmean {

std::string Interval::str() const {
  std::ostringstream os;
  os << (lo_open ? '(' : '[') << lo << ", " << hi << (hi_open ? ')' : ']');
  return os.str();
}

}  // namespace devmean
