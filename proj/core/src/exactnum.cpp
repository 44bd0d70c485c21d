#include "orbitmoment/exactnum.hpp"

#include <mpfr.h>

#include <cmath>

#include "orbitmoment/errors.hpp"

namespace orbitmoment {
namespace {

// Working precision for roots; the final rounding to double dominates.
constexpr mpfr_prec_t kRootPrecision = 256;

class MpfrValue {
 public:
  MpfrValue() { mpfr_init2(value_, kRootPrecision); }
  ~MpfrValue() { mpfr_clear(value_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;

  mpfr_ptr get() { return value_; }

 private:
  mpfr_t value_;
};

bool valid_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!valid_integer_text(s)) {
    throw ValidationError("malformed integer '" + std::string(s) + "'");
  }
  if (s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const auto den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text.front() == '-') {
    throw ValidationError("negative denominator in '" + std::string(text) + "'");
  }
  return make_rational(parse_integer(text.substr(0, slash)), parse_integer(den_text));
}

std::string to_string(const Rational& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Integer binomial(std::uint64_t a, std::uint64_t b) {
  if (b > a) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), a, b);
  return r;
}

Integer falling_factorial(std::uint64_t n, std::uint64_t r) {
  if (r > n) {
    throw ValidationError("falling_factorial: r=" + std::to_string(r) + " exceeds n=" +
                          std::to_string(n));
  }
  Integer out = 1;
  for (std::uint64_t i = 0; i < r; ++i) out *= n - i;
  return out;
}

Integer factorial(std::uint64_t n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer odd_double_factorial(std::uint64_t m) {
  if (m == 0) return 1;
  Integer r;
  mpz_2fac_ui(r.get_mpz_t(), 2 * m - 1);
  return r;
}

Rational sphere_monomial_moment(std::span<const std::uint32_t> alpha, std::size_t n) {
  if (n == 0) throw ValidationError("sphere_monomial_moment: n must be positive");
  if (alpha.size() != n) {
    throw ValidationError("sphere_monomial_moment: exponent vector has length " +
                          std::to_string(alpha.size()) + ", expected " + std::to_string(n));
  }
  Integer num = 1;
  std::uint64_t half_degree = 0;
  for (auto a : alpha) {
    if (a % 2 != 0) return 0;
    num *= odd_double_factorial(a / 2);
    half_degree += a / 2;
  }
  // Gamma(|b| + n/2) / Gamma(n/2) = prod_{j<|b|} (n/2 + j); the powers of two
  // cancel against the 2^{-b_i} in Gamma(b_i + 1/2) / sqrt(pi).
  Integer den = 1;
  for (std::uint64_t j = 0; j < half_degree; ++j) den *= n + 2 * j;
  return make_rational(num, den);
}

double root_m(const Rational& x, std::uint64_t m) {
  if (m == 0) throw ValidationError("root order must be positive");
  if (sgn(x) < 0) throw ValidationError("root of a negative value");
  if (sgn(x) == 0) return 0.0;
  MpfrValue v;
  mpfr_set_q(v.get(), x.get_mpq_t(), MPFR_RNDN);
  mpfr_rootn_ui(v.get(), v.get(), static_cast<unsigned long>(m), MPFR_RNDN);
  return mpfr_get_d(v.get(), MPFR_RNDN);
}

double root_2k(const Rational& x, std::uint64_t k) {
  if (k == 0) throw ValidationError("k must be positive");
  return root_m(x, 2 * k);
}

double sub_root_2k_down(const Rational& a, const Rational& x, std::uint64_t k) {
  if (k == 0) throw ValidationError("k must be positive");
  if (sgn(x) < 0) throw ValidationError("root of a negative value");
  MpfrValue root, lhs;
  mpfr_set_q(root.get(), x.get_mpq_t(), MPFR_RNDU);
  mpfr_rootn_ui(root.get(), root.get(), static_cast<unsigned long>(2 * k), MPFR_RNDU);
  mpfr_set_q(lhs.get(), a.get_mpq_t(), MPFR_RNDD);
  mpfr_sub(lhs.get(), lhs.get(), root.get(), MPFR_RNDD);
  return mpfr_get_d(lhs.get(), MPFR_RNDD);
}

double bound_factor(std::uint64_t dim, std::uint64_t k) {
  if (k == 0) throw ValidationError("k must be positive");
  if (dim == 0) return 0.0;
  return root_2k(Rational(binomial(dim + k - 1, k)), k);
}

double to_double(const Rational& x) {
  MpfrValue v;
  mpfr_set_q(v.get(), x.get_mpq_t(), MPFR_RNDN);
  return mpfr_get_d(v.get(), MPFR_RNDN);
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw ValidationError("non-finite floating value");
  return Rational(x);
}

Rational pow(const Rational& x, std::uint64_t e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), e);
  return r;
}

Integer common_denominator(std::span<const Rational> values) {
  Integer l = 1;
  for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

}  // namespace orbitmoment
