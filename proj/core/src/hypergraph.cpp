#include "orbitmoment/hypergraph.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "orbitmoment/errors.hpp"

namespace orbitmoment::hyper {

Hypergraph::Hypergraph(std::size_t n, std::size_t d, std::vector<std::vector<std::size_t>> edges,
                       std::vector<Rational> weights)
    : n_(n), d_(d), edges_(std::move(edges)), weights_(std::move(weights)) {
  if (n == 0 || d == 0) throw ValidationError("hypergraph needs n >= 1 and d >= 1");
  if (weights_.empty()) weights_.assign(edges_.size(), Rational(1));
  if (weights_.size() != edges_.size()) {
    throw ValidationError("hypergraph has " + std::to_string(edges_.size()) + " edges but " +
                          std::to_string(weights_.size()) + " weights");
  }
  for (auto& e : edges_) {
    if (e.size() != d) {
      throw ValidationError("edge of size " + std::to_string(e.size()) + " in a " +
                            std::to_string(d) + "-hypergraph (pad non-uniform edges to d)");
    }
    for (auto v : e) {
      if (v >= n) throw ValidationError("edge vertex out of range");
    }
    std::sort(e.begin(), e.end());
  }
  auto sorted = edges_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError("duplicate edge");
  }
}

bool Hypergraph::uniform() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const auto& e) {
    return std::adjacent_find(e.begin(), e.end()) == e.end();
  });
}

std::ptrdiff_t Hypergraph::find_edge(std::vector<std::size_t> multiset) const {
  std::sort(multiset.begin(), multiset.end());
  auto it = std::find(edges_.begin(), edges_.end(), multiset);
  return it == edges_.end() ? -1 : std::distance(edges_.begin(), it);
}

assign::DenseTensor adjacency_tensor(const Hypergraph& h, Role role) {
  assign::DenseTensor t(h.n(), h.d());
  const Integer d_factorial = factorial(h.d());
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    auto arrangement = h.edges()[i];  // sorted, so next_permutation visits each ordering once
    Rational value = h.weights()[i];
    if (role == Role::kTarget) {
      std::map<std::size_t, std::size_t> multiplicity;
      for (auto v : arrangement) ++multiplicity[v];
      Integer numerator = 1;
      for (const auto& [v, m] : multiplicity) numerator *= factorial(m);
      value *= make_rational(numerator, d_factorial);
    }
    do {
      t.set(arrangement, value);
    } while (std::next_permutation(arrangement.begin(), arrangement.end()));
  }
  return t;
}

namespace {

void require_compatible(const Hypergraph& h1, const Hypergraph& h2,
                        const assign::Permutation& g) {
  if (h1.n() != h2.n() || h1.d() != h2.d()) {
    throw ValidationError("hypergraphs differ in vertex count or arity");
  }
  if (g.size() != h1.n()) throw ValidationError("permutation size differs from vertex count");
}

}  // namespace

Rational matched_edges(const Hypergraph& h1, const Hypergraph& h2,
                       const assign::Permutation& g) {
  require_compatible(h1, h2, g);
  return assign::matrix_element(adjacency_tensor(h1, Role::kSource),
                                adjacency_tensor(h2, Role::kTarget), g);
}

Rational matched_edges_direct(const Hypergraph& h1, const Hypergraph& h2,
                              const assign::Permutation& g) {
  require_compatible(h1, h2, g);
  const auto inv = g.inverse();
  Rational total = 0;
  for (std::size_t j = 0; j < h2.edge_count(); ++j) {
    std::vector<std::size_t> pulled;
    for (auto v : h2.edges()[j]) pulled.push_back(inv(v));
    const auto i = h1.find_edge(std::move(pulled));
    if (i >= 0) total += h1.weights()[static_cast<std::size_t>(i)] * h2.weights()[j];
  }
  return total;
}

Alignment align(const Hypergraph& h1, const Hypergraph& h2, std::uint32_t k,
                std::uint64_t visit_budget) {
  if (h1.n() != h2.n() || h1.d() != h2.d()) {
    throw ValidationError("hypergraphs differ in vertex count or arity");
  }
  const auto a = adjacency_tensor(h1, Role::kSource);
  const auto b = adjacency_tensor(h2, Role::kTarget);
  auto greedy = assign::greedy_extract(a, b, k, visit_budget);
  // The first greedy step is the moment over the whole group.
  auto bounds = make_interval(greedy.step_moments.front(), assign::assignment_factor(a, b, k), k);
  return Alignment{std::move(greedy.permutation), std::move(greedy.value), std::move(bounds)};
}

}  // namespace orbitmoment::hyper
