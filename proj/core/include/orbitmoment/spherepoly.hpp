#pragma once

// Homogeneous polynomials on the unit sphere: exact L^{2k} moments,
// certified sup-norm intervals, the fewnomial (1+eps) scheduler and the
// reduction of polynomial-system feasibility to a sup-norm question.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "orbitmoment/exactnum.hpp"
#include "orbitmoment/interval.hpp"

namespace orbitmoment::sphere {

using Exponents = std::vector<std::uint32_t>;

inline constexpr std::size_t kDefaultTermBudget = 5'000'000;

// A term as read from input: exponents may be negative or of the wrong
// length, and the same monomial may appear more than once.
struct RawTerm {
  std::vector<std::int64_t> exps;
  Rational coef;
};

// Homogeneous polynomial of degree d in n variables, terms collected and
// ordered lexicographically by exponent vector. Zero coefficients are never
// stored; the zero polynomial keeps its declared (n, d).
class SparsePoly {
 public:
  using TermMap = std::map<Exponents, Rational>;

  SparsePoly(std::size_t n, std::uint32_t d);

  std::size_t n() const { return n_; }
  std::uint32_t degree() const { return d_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Adds coef * x^exps. exps must already have length n and sum d.
  void add_term(const Exponents& exps, const Rational& coef);

  /// Coefficient of x^exps (zero when absent).
  Rational coefficient(const Exponents& exps) const;

  /// Evaluates at a point in floating point.
  double evaluate(std::span<const double> x) const;

  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

 private:
  std::size_t n_;
  std::uint32_t d_;
  TermMap terms_;
};

/// Collects terms and checks lengths, signs and homogeneity.
SparsePoly validate(std::size_t n, std::uint32_t d, std::span<const RawTerm> terms);

/// x_i as a polynomial in n variables (0-based i).
SparsePoly variable(std::size_t n, std::size_t i);

/// (x_1^2 + ... + x_n^2)^e.
SparsePoly squared_norm_power(std::size_t n, std::uint32_t e);

SparsePoly operator+(const SparsePoly& a, const SparsePoly& b);
SparsePoly operator-(const SparsePoly& a, const SparsePoly& b);
SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
SparsePoly operator*(const Rational& c, const SparsePoly& p);

/// p with variables renamed: x_i -> x_{perm[i]}.
SparsePoly permute_variables(const SparsePoly& p, std::span<const std::size_t> perm);

/// p^m with terms collected. Throws BudgetError when an intermediate power
/// has more than term_budget monomials.
SparsePoly pow_collect(const SparsePoly& p, std::uint32_t m,
                       std::size_t term_budget = kDefaultTermBudget);

/// Exact average of p^{2k} over the unit sphere.
Rational moment_2k(const SparsePoly& p, std::uint32_t k,
                   std::size_t term_budget = kDefaultTermBudget);

/// Sphere average of a polynomial, integrated term by term.
Rational sphere_average(const SparsePoly& p);

double norm_2k(const SparsePoly& p, std::uint32_t k,
               std::size_t term_budget = kDefaultTermBudget);

/// C(kd + n - 1, kd): dimension of degree-kd forms in n variables.
Integer sphere_factor(std::size_t n, std::uint32_t d, std::uint32_t k);

/// [||p||_{2k}, C(kd+n-1, kd)^{1/2k} ||p||_{2k}]. The zero polynomial gives
/// the degenerate interval [0, 0].
Interval sup_bounds(const SparsePoly& p, std::uint32_t k,
                    std::size_t term_budget = kDefaultTermBudget);

/// Smallest k >= 1 with (n-1)/(2k) ln(kd+1) < ln(1+eps).
std::uint32_t choose_k(std::size_t n, std::uint32_t d, double eps);

/// sup_bounds at k = choose_k(n, d, eps); upper <= (1 + eps) lower.
Interval fewnomial_sup(const SparsePoly& p, double eps,
                       std::size_t term_budget = kDefaultTermBudget);

/// max |p(x)| over `trials` Gaussian-normalized random points of S^{n-1}.
double sample_lower_bound(const SparsePoly& p, std::size_t trials, std::uint64_t seed);

enum class Verdict { kPossiblySolvable, kCertifiedGap };

const char* to_string(Verdict v);

struct SystemReduction {
  Rational gamma;   // exact value used in p = gamma |x|^{2d} - q
  SparsePoly q;     // sum of squares of the system
  SparsePoly p;
  Interval q_bounds;
  Interval p_bounds;
  Verdict verdict = Verdict::kPossiblySolvable;
  // gamma - p_bounds.upper when the verdict is kCertifiedGap.
  std::optional<double> min_q_lower_bound;
};

inline constexpr double kDefaultDelta = 0.01;

/// Tests p_1 = ... = p_s = 0 for a real nonzero solution through
/// q = sum p_i^2 and p = gamma |x|^{2d} - q with gamma = (1+delta) * upper(q).
SystemReduction system_reduce(std::span<const SparsePoly> system, std::uint32_t k,
                              double delta = kDefaultDelta,
                              std::size_t term_budget = kDefaultTermBudget);

}  // namespace orbitmoment::sphere
