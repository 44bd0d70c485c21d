#pragma once

// Exact desk-scale checks of the moment/maximum sandwich inequalities for
// S_n permuting the coordinates of R^n, where every quantity can be
// enumerated: f(g) = <ell, g v>.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "orbitmoment/exactnum.hpp"

namespace orbitmoment::theory {

inline constexpr std::size_t kDefaultVerifyCap = 7;

/// dim span{ (g v)^{(x)k} : g in S_n }, exact. Throws ValidationError for
/// v = 0 or n > cap.
std::size_t orbit_span_dim(std::span<const Rational> v, std::uint32_t k,
                           std::size_t cap = kDefaultVerifyCap);

// One inequality lhs <= rhs, compared exactly (both sides raised to the
// power that clears the roots).
struct InequalityCheck {
  std::string inequality;
  Rational lhs;
  Rational rhs;
  bool holds = false;
  bool tight = false;
};

struct SandwichReport {
  std::size_t n = 0;
  std::uint32_t k = 1;
  Rational sup_abs;     // max_g |f(g)|
  Rational moment_2k;   // (1/n!) sum_g f(g)^{2k}
  Rational moment_2;    // (1/n!) sum_g f(g)^2
  std::size_t d_k = 0;  // orbit span dimension
  std::vector<InequalityCheck> checks;

  bool all_hold() const;
};

/// Enumerates S_n and checks ||f||_{2k} <= ||f||_inf <= D_k^{1/2k} ||f||_{2k},
/// the C(n+k-1, k) relaxation, and ||f||_2 <= ||f||_inf <= sqrt(n) ||f||_2.
SandwichReport verify_sandwich(std::span<const Rational> v, std::span<const Rational> ell,
                               std::uint32_t k, std::size_t cap = kDefaultVerifyCap);

struct FactorCheck {
  std::uint64_t dim = 0;
  double factor = 0.0;  // C(dim + k0 - 1, k0)^{1/(2 k0)}
  double target = 0.0;  // eps sqrt(dim)
  bool holds = false;   // exact: C(dim+k0-1, k0) <= eps^{2k0} dim^{k0}
};

struct Cor16Report {
  double eps = 0.0;
  std::uint32_t k0 = 1;
  std::vector<FactorCheck> checks;

  bool all_hold() const;
};

/// Smallest k0 with k0! > (2 / eps^2)^{k0}, then the check
/// C(dim + k0 - 1, k0)^{1/(2k0)} <= eps sqrt(dim) for each dim (default
/// {k0, 2 k0, 10 k0}). Throws ValidationError when some dim < k0.
Cor16Report cor16_factor_check(double eps, std::span<const std::uint64_t> dims = {});

}  // namespace orbitmoment::theory
