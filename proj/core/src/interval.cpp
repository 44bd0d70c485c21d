#include "orbitmoment/interval.hpp"

#include "orbitmoment/errors.hpp"

namespace orbitmoment {

bool Interval::contains_exact(const Rational& value) const {
  if (sgn(value) < 0) return false;
  const Rational p = pow(value, 2 * static_cast<std::uint64_t>(k_used));
  return lower_exact <= p && p <= upper_exact;
}

Interval make_interval(const Rational& moment, const Integer& factor, std::uint32_t k) {
  if (k == 0) throw ValidationError("k must be positive");
  if (sgn(moment) < 0) throw ValidationError("negative even moment");
  Interval out;
  out.k_used = k;
  out.factor = factor;
  out.lower_exact = moment;
  out.upper_exact = moment * Rational(factor);
  out.lower = root_2k(out.lower_exact, k);
  out.upper = root_2k(out.upper_exact, k);
  out.degenerate = sgn(moment) == 0;
  return out;
}

}  // namespace orbitmoment
