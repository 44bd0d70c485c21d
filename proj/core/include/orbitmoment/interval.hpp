#pragma once

#include <cstdint>

#include "orbitmoment/exactnum.hpp"

namespace orbitmoment {

// Certified two-sided estimate  lower <= max|f| <= upper  obtained from the
// 2k-th moment M of f:  lower = M^{1/2k},  upper = (factor * M)^{1/2k}.
//
// The floats are the correctly rounded roots of lower_exact and upper_exact;
// comparisons that must not be decided by roundoff should use the exact
// fields at the 2k-th power level.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  Rational lower_exact;  // M
  Rational upper_exact;  // factor * M
  Integer factor = 1;
  std::uint32_t k_used = 1;
  // Set when f vanishes identically; the interval is then [0, 0].
  bool degenerate = false;

  double ratio() const { return lower > 0.0 ? upper / lower : 1.0; }

  /// True when value^{2k} lies in [lower_exact, upper_exact], for value >= 0.
  bool contains_exact(const Rational& value) const;
};

/// Builds the interval from an exact moment and an exact sandwich factor.
Interval make_interval(const Rational& moment, const Integer& factor, std::uint32_t k);

}  // namespace orbitmoment
