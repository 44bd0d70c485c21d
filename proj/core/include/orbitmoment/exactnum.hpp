#pragma once

// Exact arithmetic and the closed-form scalar quantities shared by the
// sphere and symmetric-group engines.
//
// Integer and Rational are GMP's mpz_class / mpq_class. mpq_class keeps
// values canonical (lowest terms, positive denominator) after every
// arithmetic operation; values built from raw numerator/denominator pairs
// go through make_rational(), which canonicalizes.

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace orbitmoment {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in lowest terms. Throws ValidationError when den == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "p", "-p", "p/q". Throws ValidationError on malformed text or q == 0.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" text (den == 1 is still written).
std::string to_string(const Rational& x);

/// C(a, b); zero when b > a.
Integer binomial(std::uint64_t a, std::uint64_t b);

/// n (n-1) ... (n-r+1). Throws ValidationError when r > n.
Integer falling_factorial(std::uint64_t n, std::uint64_t r);

Integer factorial(std::uint64_t n);

/// (2m-1)!! = 1 * 3 * ... * (2m-1), with (-1)!! = 1.
Integer odd_double_factorial(std::uint64_t m);

/// Average of x_1^a_1 ... x_n^a_n over the unit sphere S^{n-1} under the
/// rotation-invariant probability measure.
///
/// Zero when any exponent is odd. For a = 2b the half-integer Gamma values
/// collapse (every sqrt(pi) cancels) and the result is
///
///   prod_i (2 b_i - 1)!!  /  prod_{j=0}^{|b|-1} (n + 2j).
///
/// Throws ValidationError when alpha.size() != n or n == 0.
Rational sphere_monomial_moment(std::span<const std::uint32_t> alpha, std::size_t n);

/// C(dim + k - 1, k)^{1/(2k)}: the sandwich factor for a representation of
/// dimension dim. Computed from the exact binomial with one rounding.
double bound_factor(std::uint64_t dim, std::uint64_t k);

/// x^{1/(2k)} rounded to nearest double (error well under 1 ulp).
/// Throws ValidationError for x < 0 or k == 0.
double root_2k(const Rational& x, std::uint64_t k);

/// a - x^{1/(2k)} rounded toward minus infinity, for reporting a certified
/// lower bound in floating point.
double sub_root_2k_down(const Rational& a, const Rational& x, std::uint64_t k);

/// x^{1/m} for an arbitrary positive integer m, same accuracy as root_2k.
double root_m(const Rational& x, std::uint64_t m);

/// Nearest double to x, without overflow for huge numerators/denominators
/// as long as the quotient itself is representable.
double to_double(const Rational& x);

/// Exact value of a finite double.
Rational from_double(double x);

/// x^e for a non-negative integer exponent.
Rational pow(const Rational& x, std::uint64_t e);

/// Least common multiple of the denominators, so that lcm * x is integral.
Integer common_denominator(std::span<const Rational> values);

}  // namespace orbitmoment
