#include "orbitmoment/theory_verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "orbitmoment/errors.hpp"

namespace orbitmoment::theory {
namespace {

void check_vector(std::span<const Rational> v, std::size_t cap) {
  if (v.empty()) throw ValidationError("vector must be non-empty");
  if (v.size() > cap) {
    throw ValidationError("n=" + std::to_string(v.size()) + " exceeds the enumeration cap " +
                          std::to_string(cap));
  }
}

// Incrementally maintained row echelon form over the integers. Rows are
// kept primitive (content 1) so entries stay small.
class IntegerEchelon {
 public:
  explicit IntegerEchelon(std::size_t columns) : columns_(columns) {}

  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == columns_; }

  // Returns true when row is independent of the rows seen so far.
  bool insert(std::vector<Integer> row) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t c = pivots_[r];
      if (row[c] == 0) continue;
      const Integer factor_row = rows_[r][c];
      const Integer factor_new = row[c];
      for (std::size_t j = 0; j < columns_; ++j) {
        row[j] = row[j] * factor_row - rows_[r][j] * factor_new;
      }
      make_primitive(row);
    }
    auto it = std::find_if(row.begin(), row.end(), [](const Integer& x) { return x != 0; });
    if (it == row.end()) return false;
    pivots_.push_back(static_cast<std::size_t>(std::distance(row.begin(), it)));
    rows_.push_back(std::move(row));
    return true;
  }

 private:
  static void make_primitive(std::vector<Integer>& row) {
    Integer g = 0;
    for (const auto& x : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1) {
      for (auto& x : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }
  }

  std::size_t columns_;
  std::vector<std::vector<Integer>> rows_;
  std::vector<std::size_t> pivots_;
};

// Sorted k-tuples i_1 <= ... <= i_k over {0..n-1}; a symmetric tensor is
// determined by its entries at these indices.
std::vector<std::vector<std::size_t>> sorted_tuples(std::size_t n, std::uint32_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(k, 0);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t start) -> void {
    if (pos == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur[pos] = i;
      self(self, pos + 1, i);
    }
  };
  rec(rec, 0, 0);
  return out;
}

std::vector<Integer> integer_scaled(std::span<const Rational> v) {
  const Integer scale = common_denominator(v);
  std::vector<Integer> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.get_num() * (scale / x.get_den()));
  return out;
}

InequalityCheck make_check(std::string name, Rational lhs, Rational rhs) {
  InequalityCheck c{std::move(name), std::move(lhs), std::move(rhs)};
  c.holds = c.lhs <= c.rhs;
  c.tight = c.lhs == c.rhs;
  return c;
}

}  // namespace

std::size_t orbit_span_dim(std::span<const Rational> v, std::uint32_t k, std::size_t cap) {
  check_vector(v, cap);
  if (k == 0) throw ValidationError("k must be positive");
  if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; })) {
    throw ValidationError("orbit_span_dim: v must be nonzero");
  }
  // The span is unchanged by scaling v, so work with integers. The orbit of
  // v is the set of distinct rearrangements of its entries, and the rank of
  // the flattened tensors (g v)^{(x)k} equals the rank of their entries at
  // sorted index tuples.
  auto w = integer_scaled(v);
  std::sort(w.begin(), w.end());
  const auto tuples = sorted_tuples(w.size(), k);
  IntegerEchelon echelon(tuples.size());
  do {
    std::vector<Integer> row;
    row.reserve(tuples.size());
    for (const auto& t : tuples) {
      Integer p = 1;
      for (auto i : t) p *= w[i];
      row.push_back(std::move(p));
    }
    echelon.insert(std::move(row));
  } while (!echelon.full() && std::next_permutation(w.begin(), w.end()));
  return echelon.rank();
}

bool SandwichReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds; });
}

SandwichReport verify_sandwich(std::span<const Rational> v, std::span<const Rational> ell,
                               std::uint32_t k, std::size_t cap) {
  check_vector(v, cap);
  if (ell.size() != v.size()) throw ValidationError("v and ell differ in length");
  if (k == 0) throw ValidationError("k must be positive");
  const std::size_t n = v.size();

  SandwichReport report;
  report.n = n;
  report.k = k;
  report.d_k = orbit_span_dim(v, k, cap);

  // f(g) = <ell, g v> = sum_i ell_{g(i)} v_i.
  std::vector<std::size_t> g(n);
  std::iota(g.begin(), g.end(), std::size_t{0});
  Rational sum_2k = 0;
  Rational sum_2 = 0;
  Rational sup = 0;
  do {
    Rational f = 0;
    for (std::size_t i = 0; i < n; ++i) f += ell[g[i]] * v[i];
    sum_2 += f * f;
    sum_2k += pow(f, 2 * std::uint64_t{k});
    sup = std::max(sup, Rational(abs(f)));
  } while (std::next_permutation(g.begin(), g.end()));

  const Rational group_order(factorial(n));
  report.sup_abs = sup;
  report.moment_2k = sum_2k / group_order;
  report.moment_2 = sum_2 / group_order;

  const Rational sup_2k = pow(sup, 2 * std::uint64_t{k});
  const Rational sup_2 = sup * sup;
  const Rational sym_dim(binomial(n + k - 1, k));

  auto& c = report.checks;
  c.push_back(make_check("||f||_2k <= ||f||_inf", report.moment_2k, sup_2k));
  c.push_back(make_check("||f||_inf <= D_k^(1/2k) ||f||_2k", sup_2k,
                         Rational(static_cast<unsigned long>(report.d_k)) * report.moment_2k));
  c.push_back(make_check("||f||_inf <= C(n+k-1,k)^(1/2k) ||f||_2k", sup_2k,
                         sym_dim * report.moment_2k));
  c.push_back(make_check("D_k <= C(n+k-1,k)", Rational(static_cast<unsigned long>(report.d_k)),
                         sym_dim));
  c.push_back(make_check("||f||_2 <= ||f||_inf", report.moment_2, sup_2));
  c.push_back(make_check("||f||_inf <= sqrt(n) ||f||_2", sup_2,
                         Rational(static_cast<unsigned long>(n)) * report.moment_2));
  return report;
}

bool Cor16Report::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds; });
}

Cor16Report cor16_factor_check(double eps, std::span<const std::uint64_t> dims) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ValidationError("eps must be positive");
  const Rational eps_exact = from_double(eps);
  const Rational eps_sq = eps_exact * eps_exact;

  // k! > (2/eps^2)^k  <=>  k! eps^{2k} > 2^k.
  std::uint32_t k0 = 1;
  Integer fact = 1;
  while (true) {
    fact *= k0;
    Integer two_k;
    mpz_ui_pow_ui(two_k.get_mpz_t(), 2, k0);
    if (Rational(fact) * pow(eps_sq, k0) > Rational(two_k)) break;
    ++k0;
  }

  Cor16Report report;
  report.eps = eps;
  report.k0 = k0;
  std::vector<std::uint64_t> defaults{k0, 2ull * k0, 10ull * k0};
  if (dims.empty()) dims = defaults;
  for (auto dim : dims) {
    if (dim < k0) {
      throw ValidationError("dim=" + std::to_string(dim) + " is below k0=" + std::to_string(k0));
    }
    FactorCheck check;
    check.dim = dim;
    check.factor = bound_factor(dim, k0);
    check.target = eps * std::sqrt(static_cast<double>(dim));
    const Rational lhs(binomial(dim + k0 - 1, k0));
    Integer dim_pow;
    mpz_ui_pow_ui(dim_pow.get_mpz_t(), dim, k0);
    check.holds = lhs <= pow(eps_sq, k0) * Rational(dim_pow);
    report.checks.push_back(check);
  }
  return report;
}

}  // namespace orbitmoment::theory
