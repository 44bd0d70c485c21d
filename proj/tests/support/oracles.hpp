#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's moment engines; inputs and outputs use the library's value types
// only so results can be compared directly.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "orbitmoment/hypergraph.hpp"
#include "orbitmoment/orbit_assign.hpp"
#include "orbitmoment/spherepoly.hpp"

namespace oracle {

using orbitmoment::Rational;

// Gamma at a positive half-integer h/2, as q * sqrt(pi)^e with e in {0, 1}.
struct HalfGamma {
  mpq_class q = 1;
  int e = 0;
};

inline HalfGamma gamma_half(unsigned twice) {
  if (twice == 0) throw std::invalid_argument("gamma pole");
  HalfGamma g;
  unsigned x;  // twice the current argument
  if (twice % 2 == 0) {
    x = 2;  // Gamma(1) = 1
  } else {
    x = 1;  // Gamma(1/2) = sqrt(pi)
    g.e = 1;
  }
  while (x < twice) {
    mpq_class step(x, 2);
    step.canonicalize();
    g.q *= step;
    x += 2;
  }
  return g;
}

// Normalized integral of x^alpha over S^{n-1}:
//   Gamma(n/2) prod Gamma((a_i+1)/2) / (pi^{n/2} Gamma((|a|+n)/2)).
// Odd exponents vanish by the x_i -> -x_i symmetry.
inline Rational sphere_monomial(const std::vector<std::uint32_t>& alpha) {
  const unsigned n = static_cast<unsigned>(alpha.size());
  unsigned total = 0;
  for (auto a : alpha) {
    if (a % 2) return 0;
    total += a;
  }
  HalfGamma num = gamma_half(n);
  for (auto a : alpha) {
    auto g = gamma_half(a + 1);
    num.q *= g.q;
    num.e += g.e;
  }
  auto den = gamma_half(total + n);
  // pi^{n/2} = sqrt(pi)^n
  const int pi_power = num.e - den.e - static_cast<int>(n);
  if (pi_power != 0) throw std::logic_error("sqrt(pi) powers did not cancel");
  return num.q / den.q;
}

// Closed form average of xi_1^{2m} over S^{n-1}:
//   Gamma(n/2) Gamma(m + 1/2) / (sqrt(pi) Gamma(m + n/2)).
inline Rational power_of_linear(unsigned n, unsigned m) {
  auto a = gamma_half(n);
  auto b = gamma_half(2 * m + 1);
  auto c = gamma_half(2 * m + n);
  if (a.e + b.e - 1 - c.e != 0) throw std::logic_error("sqrt(pi) powers did not cancel");
  return a.q * b.q / c.q;
}

using NaivePoly = std::map<std::vector<std::uint32_t>, Rational>;

inline NaivePoly naive(const orbitmoment::sphere::SparsePoly& p) {
  NaivePoly out;
  for (const auto& [e, c] : p.terms()) out[e] = c;
  return out;
}

inline NaivePoly naive_mul(const NaivePoly& a, const NaivePoly& b) {
  NaivePoly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::vector<std::uint32_t> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  }
  std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

inline Rational integrate(const NaivePoly& p) {
  Rational total = 0;
  for (const auto& [e, c] : p) total += c * sphere_monomial(e);
  return total;
}

// Average of p^{2k} over the sphere by schoolbook expansion.
inline Rational sphere_moment(const orbitmoment::sphere::SparsePoly& p, unsigned k) {
  const auto base = naive(p);
  NaivePoly acc;
  acc[std::vector<std::uint32_t>(p.n(), 0)] = 1;
  for (unsigned i = 0; i < 2 * k; ++i) acc = naive_mul(acc, base);
  return integrate(acc);
}

inline Rational pow_q(const Rational& x, unsigned e) {
  Rational r = 1;
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}

// <B, gA> = sum_I B_{g(I)} A_I.
inline Rational assignment_value(const orbitmoment::assign::DenseTensor& a,
                                 const orbitmoment::assign::DenseTensor& b,
                                 const std::vector<std::size_t>& g) {
  const std::size_t n = a.n(), d = a.order();
  Rational total = 0;
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t linear = 0; linear < a.size(); ++linear) {
    std::size_t rest = linear, image = 0;
    for (std::size_t pos = 0; pos < d; ++pos) {
      idx[d - 1 - pos] = rest % n;
      rest /= n;
    }
    for (std::size_t pos = 0; pos < d; ++pos) image = image * n + g[idx[pos]];
    total += a[linear] * b[image];
  }
  return total;
}

struct Enumeration {
  Rational moment;  // (1/n!) sum f^{2k}
  Rational max_abs;
  std::vector<Rational> values;  // f over S_n in lexicographic order
};

inline Enumeration enumerate(const orbitmoment::assign::DenseTensor& a,
                             const orbitmoment::assign::DenseTensor& b, unsigned k) {
  std::vector<std::size_t> g(a.n());
  std::iota(g.begin(), g.end(), std::size_t{0});
  Enumeration out;
  Rational sum = 0;
  mpz_class count = 0;
  do {
    Rational f = assignment_value(a, b, g);
    sum += pow_q(f, 2 * k);
    out.max_abs = std::max(out.max_abs, Rational(abs(f)));
    out.values.push_back(std::move(f));
    ++count;
  } while (std::next_permutation(g.begin(), g.end()));
  out.moment = sum / Rational(count);
  return out;
}

// Weighted count of H1 edges carried onto H2 edges by g.
inline Rational matched_count(const orbitmoment::hyper::Hypergraph& h1,
                              const orbitmoment::hyper::Hypergraph& h2,
                              const std::vector<std::size_t>& g) {
  Rational total = 0;
  for (std::size_t e = 0; e < h1.edges().size(); ++e) {
    auto image = h1.edges()[e];
    for (auto& v : image) v = g[v];
    std::sort(image.begin(), image.end());
    for (std::size_t f = 0; f < h2.edges().size(); ++f) {
      auto target = h2.edges()[f];
      std::sort(target.begin(), target.end());
      if (target == image) total += h1.weights()[e] * h2.weights()[f];
    }
  }
  return total;
}

// Rank of a rational matrix by Gaussian elimination.
inline std::size_t rank(std::vector<std::vector<Rational>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && sgn(m[piv][c]) == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

// dim span{ (g v)^{(x)k} : g in S_n } from the full flattened n^k tensors.
inline std::size_t orbit_span_rank(const std::vector<Rational>& v, unsigned k) {
  const std::size_t n = v.size();
  std::size_t cols = 1;
  for (unsigned i = 0; i < k; ++i) cols *= n;
  std::vector<std::size_t> g(n);
  std::iota(g.begin(), g.end(), std::size_t{0});
  std::vector<std::vector<Rational>> rows;
  do {
    std::vector<Rational> gv(n);
    for (std::size_t i = 0; i < n; ++i) gv[g[i]] = v[i];
    std::vector<Rational> row(cols);
    for (std::size_t c = 0; c < cols; ++c) {
      Rational p = 1;
      std::size_t rest = c;
      for (unsigned j = 0; j < k; ++j) {
        p *= gv[rest % n];
        rest /= n;
      }
      row[c] = p;
    }
    rows.push_back(std::move(row));
  } while (std::next_permutation(g.begin(), g.end()));
  return rank(std::move(rows));
}

// ---- random instances ----

inline Rational random_rational(std::mt19937_64& rng, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(-max_num, max_num), den(1, max_den);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline orbitmoment::sphere::SparsePoly random_fewnomial(std::mt19937_64& rng, std::size_t n,
                                                        std::uint32_t d, std::size_t m) {
  orbitmoment::sphere::SparsePoly p(n, d);
  std::uniform_int_distribution<std::size_t> var(0, n - 1);
  // Cannot ask for more distinct monomials than exist.
  const mpz_class room = orbitmoment::binomial(d + n - 1, n - 1);
  if (room < m) m = room.get_ui();
  while (p.size() < m) {
    std::vector<std::uint32_t> e(n, 0);
    for (std::uint32_t i = 0; i < d; ++i) ++e[var(rng)];
    Rational c = random_rational(rng, 9, 6);
    if (sgn(c) == 0) c = 1;
    if (sgn(p.coefficient(e)) != 0) continue;
    p.add_term(e, c);
  }
  return p;
}

inline orbitmoment::assign::DenseTensor random_tensor(std::mt19937_64& rng, std::size_t n,
                                                      std::size_t d, int lo, int hi,
                                                      double density = 1.0) {
  orbitmoment::assign::DenseTensor t(n, d);
  std::uniform_int_distribution<int> val(lo, hi);
  std::bernoulli_distribution keep(density);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (keep(rng)) t[i] = val(rng);
  }
  return t;
}

inline orbitmoment::hyper::Hypergraph random_hypergraph(std::mt19937_64& rng, std::size_t n,
                                                        std::size_t d, double density,
                                                        bool weighted) {
  // All d-subsets of {0..n-1}, each kept with the given probability.
  std::vector<std::vector<std::size_t>> edges;
  std::vector<Rational> weights;
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(d), true);
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<int> w(1, 4);
  do {
    if (!keep(rng)) continue;
    std::vector<std::size_t> e;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask[i]) e.push_back(i);
    }
    edges.push_back(std::move(e));
    weights.emplace_back(weighted ? w(rng) : 1);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return orbitmoment::hyper::Hypergraph(n, d, std::move(edges), std::move(weights));
}

}  // namespace oracle
