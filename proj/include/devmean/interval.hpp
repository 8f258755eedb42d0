#ifndef DEVMEAN_INTERVAL_HPP
#define DEVMEAN_INTERVAL_HPP

#include <cmath>
#include <limits>
#include <string>

namespace devmean {

// A nondegenerate real interval; endpoints may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = true;
  bool hi_open = true;

  static Interval whole_line() { return {}; }
  static Interval open(double a, double b) { return {a, b, true, true}; }
  static Interval closed(double a, double b) { return {a, b, false, false}; }
  static Interval closed_open(double a, double b) { return {a, b, false, true}; }
  static Interval open_closed(double a, double b) { return {a, b, true, false}; }

  bool contains(double x) const {
    if (x < lo || (lo_open && x == lo)) return false;
    if (x > hi || (hi_open && x == hi)) return false;
    return true;
  }
  bool lo_finite() const { return std::isfinite(lo); }
  bool hi_finite() const { return std::isfinite(hi); }

  // Midpoint of the interval clipped to a finite box, for grid defaults.
  double finite_lo(double clip = 1e3) const { return lo_finite() ? lo : -clip; }
  double finite_hi(double clip = 1e3) const { return hi_finite() ? hi : clip; }

  std::string str() const;
};

}  // namespace devmean

#endif
