#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "orbitmoment/errors.hpp"
#include "orbitmoment/exactnum.hpp"
#include "orbitmoment/interval.hpp"

using namespace orbitmoment;

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(parse_rational("+4/2"), Rational(2));
  EXPECT_EQ(to_string(Rational(2)), "2/1");
  EXPECT_EQ(to_string(make_rational(-3, 9)), "-1/3");
  EXPECT_EQ(to_string(Rational(0)), "0/1");
}

TEST(Rational, ParseRejectsGarbage) {
  for (const char* bad : {"", "/", "1/", "/2", "1/0", "a", "1.5", "1/-2", "--1", "1 /2"}) {
    EXPECT_THROW(parse_rational(bad), ValidationError) << bad;
  }
}

TEST(Rational, MakeRationalCanonicalizes) {
  EXPECT_EQ(make_rational(4, -6), Rational(-2, 3));
  EXPECT_THROW(make_rational(1, 0), ValidationError);
}

TEST(Combinatorics, Binomial) {
  EXPECT_EQ(binomial(4, 2), 6);
  EXPECT_EQ(binomial(7, 0), 1);
  EXPECT_EQ(binomial(0, 0), 1);
  EXPECT_EQ(binomial(2, 5), 0);
  // Base of the sphere factor for n=3, d=2, k=1.
  EXPECT_EQ(binomial(2 * 1 + 3 - 1, 2 * 1), 6);
}

TEST(Combinatorics, FallingFactorial) {
  EXPECT_EQ(falling_factorial(5, 2), 20);
  EXPECT_EQ(falling_factorial(9, 0), 1);
  EXPECT_EQ(falling_factorial(4, 4), 24);
  EXPECT_THROW(falling_factorial(3, 4), ValidationError);
}

TEST(Combinatorics, DoubleFactorial) {
  EXPECT_EQ(odd_double_factorial(0), 1);
  EXPECT_EQ(odd_double_factorial(1), 1);
  EXPECT_EQ(odd_double_factorial(4), 105);  // 7!!
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(10), 3628800);
}

TEST(SphereMonomial, SmallCases) {
  std::vector<std::uint32_t> a{2, 0, 0};
  EXPECT_EQ(sphere_monomial_moment(a, 3), Rational(1, 3));
  std::vector<std::uint32_t> odd{1, 2, 0};
  EXPECT_EQ(sphere_monomial_moment(odd, 3), 0);
  // Mean of cos^4 over the circle.
  std::vector<std::uint32_t> c4{4, 0};
  EXPECT_EQ(sphere_monomial_moment(c4, 2), Rational(3, 8));
  std::vector<std::uint32_t> none{0, 0, 0, 0};
  EXPECT_EQ(sphere_monomial_moment(none, 4), 1);
  EXPECT_THROW(sphere_monomial_moment(a, 2), ValidationError);
}

TEST(SphereMonomial, MatchesGammaOracle) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint32_t> e(0, 6);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 6;
    std::vector<std::uint32_t> alpha(n);
    for (auto& a : alpha) a = e(rng);
    EXPECT_EQ(sphere_monomial_moment(alpha, n), oracle::sphere_monomial(alpha));
  }
}

TEST(SphereMonomial, CoordinateMomentsSumToOne) {
  // sum_i E[x_i^2 |x|^{2j}] = E[|x|^{2j+2}] = 1
  for (std::size_t n = 1; n <= 6; ++n) {
    Rational total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::uint32_t> a(n, 0);
      a[i] = 2;
      total += sphere_monomial_moment(a, n);
    }
    EXPECT_EQ(total, 1) << "n=" << n;
  }
}

TEST(Roots, BoundFactor) {
  EXPECT_EQ(bound_factor(1, 1), 1.0);
  EXPECT_EQ(bound_factor(4, 1), 2.0);
  EXPECT_EQ(bound_factor(9, 1), 3.0);
  for (std::uint64_t dim = 1; dim < 30; ++dim) {
    for (std::uint64_t k = 1; k < 6; ++k) EXPECT_GE(bound_factor(dim, k), 1.0);
  }
}

TEST(Roots, Root2k) {
  for (std::uint64_t k = 1; k < 8; ++k) {
    EXPECT_EQ(root_2k(Rational(1), k), 1.0);
    EXPECT_EQ(root_2k(Rational(0), k), 0.0);
  }
  EXPECT_EQ(root_2k(Rational(1, 4), 1), 0.5);
  EXPECT_EQ(root_2k(Rational(1, 4), 2), 0.7071067811865476);
  EXPECT_THROW(root_2k(Rational(-1), 1), ValidationError);
  EXPECT_THROW(root_2k(Rational(1), 0), ValidationError);
}

TEST(Roots, Root2kWithinFourUlp) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const Rational x = abs(oracle::random_rational(rng, 100000, 999)) + Rational(1, 1000);
    const std::uint64_t k = 1 + trial % 5;
    const double r = root_2k(x, k);
    const double ref = std::pow(static_cast<long double>(to_double(x)), 1.0L / (2 * k));
    EXPECT_LE(std::abs(r - ref), 4 * std::abs(std::nextafter(ref, 2 * ref) - ref)) << x;
  }
}

TEST(Roots, SubRootRoundsDown) {
  // v <= 2 - sqrt(2)  <=>  (2 - v)^2 >= 2, checked exactly.
  for (std::uint64_t k = 1; k <= 4; ++k) {
    const double v = sub_root_2k_down(Rational(2), Rational(2), k);
    EXPECT_GE(pow(Rational(2) - from_double(v), 2 * k), 2) << k;
    EXPECT_NEAR(v, 2 - std::pow(2.0, 1.0 / (2 * k)), 1e-15);
  }
}

TEST(Conversions, DoubleRoundTrip) {
  for (double x : {0.0, 0.1, -3.75, 1e300, 5e-324}) EXPECT_EQ(to_double(from_double(x)), x);
  EXPECT_THROW(from_double(std::nan("")), ValidationError);
  EXPECT_EQ(to_double(Rational(1, 3)), 1.0 / 3.0);
}

TEST(Conversions, PowAndCommonDenominator) {
  EXPECT_EQ(pow(Rational(-2, 3), 3), Rational(-8, 27));
  EXPECT_EQ(pow(Rational(5), 0), 1);
  std::vector<Rational> v{Rational(1, 4), Rational(5, 6), Rational(3)};
  EXPECT_EQ(common_denominator(v), 12);
}

TEST(IntervalTest, Construction) {
  const auto iv = make_interval(Rational(1, 2), Integer(2), 1);
  EXPECT_EQ(iv.lower_exact, Rational(1, 2));
  EXPECT_EQ(iv.upper_exact, 1);
  EXPECT_DOUBLE_EQ(iv.upper, 1.0);
  EXPECT_TRUE(iv.contains_exact(1));
  EXPECT_FALSE(iv.contains_exact(Rational(3, 2)));
  EXPECT_FALSE(iv.degenerate);

  const auto zero = make_interval(0, Integer(7), 3);
  EXPECT_TRUE(zero.degenerate);
  EXPECT_EQ(zero.upper, 0.0);
  EXPECT_EQ(zero.ratio(), 1.0);
  EXPECT_THROW(make_interval(-1, Integer(1), 1), ValidationError);
}
