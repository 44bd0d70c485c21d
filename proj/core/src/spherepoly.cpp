#include "orbitmoment/spherepoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>

#include "orbitmoment/errors.hpp"

namespace orbitmoment::sphere {
namespace {

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto v : e) {
      h ^= v;
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

// p = terms / scale with integer coefficients.
template <typename Key>
struct IntegerForm {
  std::vector<std::pair<Key, Integer>> terms;
  Integer scale = 1;
};

IntegerForm<Exponents> to_integer_form(const SparsePoly& p) {
  IntegerForm<Exponents> out;
  for (const auto& [e, c] : p.terms()) {
    mpz_lcm(out.scale.get_mpz_t(), out.scale.get_mpz_t(), c.get_den_mpz_t());
  }
  out.terms.reserve(p.size());
  for (const auto& [e, c] : p.terms()) {
    Integer v = c.get_num() * (out.scale / c.get_den());
    out.terms.emplace_back(e, std::move(v));
  }
  return out;
}

// Mixed-radix packing of exponent vectors whose entries never exceed
// max_degree. Adding packed codes adds the vectors as long as the sum stays
// homogeneous of degree <= max_degree.
class Packer {
 public:
  Packer(std::size_t n, std::uint64_t max_degree) : n_(n), base_(max_degree + 1) {
    std::uint64_t place = 1;
    fits_ = true;
    places_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      places_.push_back(place);
      if (i + 1 < n) {
        if (place > std::numeric_limits<std::uint64_t>::max() / base_) {
          fits_ = false;
          return;
        }
        place *= base_;
      }
    }
    // The largest code is max_degree * place_of_last_digit.
    if (max_degree != 0 && place > std::numeric_limits<std::uint64_t>::max() / max_degree) {
      fits_ = false;
    }
  }

  bool fits() const { return fits_; }

  std::uint64_t pack(const Exponents& e) const {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < n_; ++i) code += e[i] * places_[i];
    return code;
  }

  Exponents unpack(std::uint64_t code) const {
    Exponents e(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      e[i] = static_cast<std::uint32_t>(code % base_);
      code /= base_;
    }
    return e;
  }

 private:
  std::size_t n_;
  std::uint64_t base_;
  bool fits_ = false;
  std::vector<std::uint64_t> places_;
};

struct AddPacked {
  std::uint64_t operator()(std::uint64_t a, std::uint64_t b) const { return a + b; }
};

struct AddVectors {
  Exponents operator()(const Exponents& a, const Exponents& b) const {
    Exponents out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
  }
};

[[noreturn]] void throw_term_budget(std::uint32_t power, std::size_t count, std::size_t budget,
                                    std::optional<int> k) {
  std::string msg = "term budget exceeded: p^" + std::to_string(power) + " has " +
                    std::to_string(count) + " collected monomials (budget " +
                    std::to_string(budget) + ")";
  if (k) msg += " at k=" + std::to_string(*k);
  throw BudgetError(msg, k);
}

// Collected integer terms of base^m by repeated multiplication with base.
// Sparse inputs with few terms make this cheaper than squaring.
template <typename Key, typename Hash, typename Add>
std::vector<std::pair<Key, Integer>> power_terms(const std::vector<std::pair<Key, Integer>>& base,
                                                 std::uint32_t m, std::size_t budget,
                                                 std::optional<int> k) {
  std::vector<std::pair<Key, Integer>> cur = base;
  Add add;
  for (std::uint32_t step = 2; step <= m && !cur.empty(); ++step) {
    std::unordered_map<Key, Integer, Hash> next;
    next.reserve(std::min(cur.size() * base.size(), budget));
    for (const auto& [ka, ca] : cur) {
      for (const auto& [kb, cb] : base) {
        auto& slot = next[add(ka, kb)];
        mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
      }
    }
    std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
    if (next.size() > budget) throw_term_budget(step, next.size(), budget, k);
    cur.assign(std::make_move_iterator(next.begin()), std::make_move_iterator(next.end()));
  }
  return cur;
}

// Calls visit(exponents, integer coefficient) for every term of p^m, where
// p = form / scale. Returns scale^m.
template <typename Visit>
Integer visit_power(const SparsePoly& p, std::uint32_t m, std::size_t budget,
                    std::optional<int> k, Visit&& visit) {
  auto form = to_integer_form(p);
  Integer scale;
  mpz_pow_ui(scale.get_mpz_t(), form.scale.get_mpz_t(), m);
  if (form.terms.empty()) return scale;

  const Packer packer(p.n(), static_cast<std::uint64_t>(p.degree()) * m);
  if (packer.fits()) {
    std::vector<std::pair<std::uint64_t, Integer>> base;
    base.reserve(form.terms.size());
    for (auto& [e, c] : form.terms) base.emplace_back(packer.pack(e), std::move(c));
    for (const auto& [code, c] : power_terms<std::uint64_t, std::hash<std::uint64_t>, AddPacked>(
             base, m, budget, k)) {
      visit(packer.unpack(code), c);
    }
  } else {
    for (const auto& [e, c] :
         power_terms<Exponents, ExponentsHash, AddVectors>(form.terms, m, budget, k)) {
      visit(e, c);
    }
  }
  return scale;
}

void require_same_shape(const SparsePoly& a, const SparsePoly& b, const char* op) {
  if (a.n() != b.n() || a.degree() != b.degree()) {
    throw ValidationError(std::string(op) + ": polynomials differ in (n, d)");
  }
}

}  // namespace

SparsePoly::SparsePoly(std::size_t n, std::uint32_t d) : n_(n), d_(d) {
  if (n == 0) throw ValidationError("polynomial needs at least one variable");
}

void SparsePoly::add_term(const Exponents& exps, const Rational& coef) {
  if (exps.size() != n_) throw ValidationError("exponent vector length differs from n");
  if (std::accumulate(exps.begin(), exps.end(), std::uint64_t{0}) != d_) {
    throw ValidationError("term degree differs from d");
  }
  if (sgn(coef) == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, coef);
  if (!inserted) {
    it->second += coef;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Rational SparsePoly::coefficient(const Exponents& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Rational(0) : it->second;
}

double SparsePoly::evaluate(std::span<const double> x) const {
  if (x.size() != n_) throw ValidationError("point dimension differs from n");
  double total = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = to_double(c);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::uint32_t r = 0; r < e[i]; ++r) term *= x[i];
    }
    total += term;
  }
  return total;
}

SparsePoly validate(std::size_t n, std::uint32_t d, std::span<const RawTerm> terms) {
  SparsePoly p(n, d);
  for (const auto& t : terms) {
    if (t.exps.size() != n) {
      throw ValidationError("exponent vector of length " + std::to_string(t.exps.size()) +
                            " in a polynomial with n=" + std::to_string(n));
    }
    Exponents e(n);
    std::int64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (t.exps[i] < 0) throw ValidationError("negative exponent");
      if (t.exps[i] > std::numeric_limits<std::uint32_t>::max()) {
        throw ValidationError("exponent out of range");
      }
      e[i] = static_cast<std::uint32_t>(t.exps[i]);
      total += t.exps[i];
    }
    if (total != static_cast<std::int64_t>(d)) {
      throw ValidationError("non-homogeneous term of degree " + std::to_string(total) +
                            " in a polynomial of degree " + std::to_string(d));
    }
    p.add_term(e, t.coef);
  }
  return p;
}

SparsePoly variable(std::size_t n, std::size_t i) {
  if (i >= n) throw ValidationError("variable index out of range");
  SparsePoly p(n, 1);
  Exponents e(n, 0);
  e[i] = 1;
  p.add_term(e, 1);
  return p;
}

SparsePoly squared_norm_power(std::size_t n, std::uint32_t e) {
  SparsePoly r(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    Exponents x(n, 0);
    x[i] = 2;
    r.add_term(x, 1);
  }
  if (e == 0) {
    SparsePoly one(n, 0);
    one.add_term(Exponents(n, 0), 1);
    return one;
  }
  return pow_collect(r, e, std::numeric_limits<std::size_t>::max());
}

SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
  require_same_shape(a, b, "sum");
  SparsePoly out = a;
  for (const auto& [e, c] : b.terms()) out.add_term(e, c);
  return out;
}

SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
  require_same_shape(a, b, "difference");
  SparsePoly out = a;
  for (const auto& [e, c] : b.terms()) out.add_term(e, -c);
  return out;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  if (a.n() != b.n()) throw ValidationError("product: polynomials differ in n");
  SparsePoly out(a.n(), a.degree() + b.degree());
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) out.add_term(AddVectors{}(ea, eb), ca * cb);
  }
  return out;
}

SparsePoly operator*(const Rational& c, const SparsePoly& p) {
  SparsePoly out(p.n(), p.degree());
  for (const auto& [e, v] : p.terms()) out.add_term(e, c * v);
  return out;
}

SparsePoly permute_variables(const SparsePoly& p, std::span<const std::size_t> perm) {
  if (perm.size() != p.n()) throw ValidationError("permutation length differs from n");
  SparsePoly out(p.n(), p.degree());
  for (const auto& [e, c] : p.terms()) {
    Exponents moved(p.n());
    for (std::size_t i = 0; i < p.n(); ++i) moved.at(perm[i]) = e[i];
    out.add_term(moved, c);
  }
  return out;
}

SparsePoly pow_collect(const SparsePoly& p, std::uint32_t m, std::size_t term_budget) {
  if (m == 0) throw ValidationError("pow_collect: exponent must be positive");
  SparsePoly out(p.n(), p.degree() * m);
  std::vector<std::pair<Exponents, Integer>> collected;
  const Integer scale = visit_power(p, m, term_budget, std::nullopt,
                                    [&](const Exponents& e, const Integer& c) {
                                      collected.emplace_back(e, c);
                                    });
  for (const auto& [e, c] : collected) out.add_term(e, make_rational(c, scale));
  return out;
}

Rational sphere_average(const SparsePoly& p) {
  Rational total = 0;
  for (const auto& [e, c] : p.terms()) total += c * sphere_monomial_moment(e, p.n());
  return total;
}

Rational moment_2k(const SparsePoly& p, std::uint32_t k, std::size_t term_budget) {
  if (k == 0) throw ValidationError("k must be positive");
  if (p.is_zero()) return 0;
  const std::uint64_t half_degree = static_cast<std::uint64_t>(k) * p.degree();

  // Every term of p^{2k} has the same total degree 2kd, so the sphere
  // integral shares the denominator prod_{j<kd} (n + 2j); only the
  // double-factorial numerators differ between terms.
  std::vector<Integer> odd_df(half_degree + 1);
  odd_df[0] = 1;
  for (std::uint64_t h = 1; h <= half_degree; ++h) odd_df[h] = odd_df[h - 1] * (2 * h - 1);

  Integer numerator = 0;
  Integer weight;
  const Integer scale = visit_power(p, 2 * k, term_budget, static_cast<int>(k),
                                    [&](const Exponents& e, const Integer& c) {
                                      weight = c;
                                      for (auto a : e) {
                                        if (a % 2 != 0) return;
                                        weight *= odd_df[a / 2];
                                      }
                                      numerator += weight;
                                    });
  Integer denominator = scale;
  for (std::uint64_t j = 0; j < half_degree; ++j) denominator *= p.n() + 2 * j;
  return make_rational(numerator, denominator);
}

double norm_2k(const SparsePoly& p, std::uint32_t k, std::size_t term_budget) {
  return root_2k(moment_2k(p, k, term_budget), k);
}

Integer sphere_factor(std::size_t n, std::uint32_t d, std::uint32_t k) {
  const std::uint64_t kd = static_cast<std::uint64_t>(k) * d;
  return binomial(kd + n - 1, kd);
}

Interval sup_bounds(const SparsePoly& p, std::uint32_t k, std::size_t term_budget) {
  if (k == 0) throw ValidationError("k must be positive");
  return make_interval(moment_2k(p, k, term_budget), sphere_factor(p.n(), p.degree(), k), k);
}

std::uint32_t choose_k(std::size_t n, std::uint32_t d, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ValidationError("eps must be positive");
  if (n == 0 || d == 0) throw ValidationError("choose_k needs n >= 1 and d >= 1");
  const double target = std::log1p(eps);
  for (std::uint32_t k = 1;; ++k) {
    const double lhs = static_cast<double>(n - 1) / (2.0 * k) *
                       std::log(static_cast<double>(k) * d + 1.0);
    if (lhs < target) return k;
    if (k == std::numeric_limits<std::uint32_t>::max()) {
      throw BudgetError("choose_k: no k found below 2^32");
    }
  }
}

Interval fewnomial_sup(const SparsePoly& p, double eps, std::size_t term_budget) {
  const std::uint32_t d = std::max<std::uint32_t>(p.degree(), 1);
  return sup_bounds(p, choose_k(p.n(), d, eps), term_budget);
}

double sample_lower_bound(const SparsePoly& p, std::size_t trials, std::uint64_t seed) {
  if (p.is_zero()) return 0.0;
  std::vector<std::pair<Exponents, double>> terms;
  terms.reserve(p.size());
  for (const auto& [e, c] : p.terms()) terms.emplace_back(e, to_double(c));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> x(p.n());
  double best = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (auto& xi : x) {
        xi = gauss(rng);
        norm2 += xi * xi;
      }
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& xi : x) xi *= inv;

    double value = 0.0;
    for (const auto& [e, c] : terms) {
      double term = c;
      for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::uint32_t r = 0; r < e[i]; ++r) term *= x[i];
      }
      value += term;
    }
    best = std::max(best, std::abs(value));
  }
  return best;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kPossiblySolvable:
      return "possibly solvable";
    case Verdict::kCertifiedGap:
      return "certified gap";
  }
  return "unknown";
}

SystemReduction system_reduce(std::span<const SparsePoly> system, std::uint32_t k, double delta,
                              std::size_t term_budget) {
  if (system.empty()) throw ValidationError("system_reduce: empty system");
  if (k == 0) throw ValidationError("k must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("delta must lie in (0, 1)");
  const std::size_t n = system.front().n();
  const std::uint32_t d = system.front().degree();
  for (const auto& pi : system) {
    if (pi.n() != n) throw ValidationError("system_reduce: polynomials differ in n");
    if (pi.degree() != d) throw ValidationError("system_reduce: polynomials differ in degree");
  }

  SparsePoly q(n, 2 * d);
  for (const auto& pi : system) q = q + pi * pi;

  SystemReduction out{.gamma = 0,
                      .q = q,
                      .p = SparsePoly(n, 2 * d),
                      .q_bounds = sup_bounds(q, k, term_budget),
                      .p_bounds = {},
                      .min_q_lower_bound = std::nullopt};
  // q >= 0 on the sphere, so its certified sup bound also bounds max q.
  if (!q.is_zero()) {
    double g = (1.0 + delta) * out.q_bounds.upper;
    // Guard against rounding when delta is tiny: gamma must exceed the bound.
    while (pow(from_double(g), 2 * std::uint64_t{k}) <= out.q_bounds.upper_exact) {
      g = std::nextafter(g, std::numeric_limits<double>::infinity());
    }
    out.gamma = from_double(g);
  }
  out.p = out.gamma * squared_norm_power(n, d) - q;
  out.p_bounds = sup_bounds(out.p, k, term_budget);

  const Rational threshold = out.gamma * (Rational(1) - from_double(delta));
  if (sgn(threshold) > 0 && out.p_bounds.upper_exact < pow(threshold, 2 * std::uint64_t{k})) {
    out.verdict = Verdict::kCertifiedGap;
    out.min_q_lower_bound = sub_root_2k_down(out.gamma, out.p_bounds.upper_exact, k);
  }
  return out;
}

}  // namespace orbitmoment::sphere
