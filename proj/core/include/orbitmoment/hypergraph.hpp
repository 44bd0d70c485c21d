#pragma once

// Hypergraph alignment as a d-dimensional assignment problem: adjacency
// tensors are built so that <B, gA> counts (or prices) the edges of H1 that
// the vertex bijection g carries onto edges of H2.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "orbitmoment/exactnum.hpp"
#include "orbitmoment/interval.hpp"
#include "orbitmoment/orbit_assign.hpp"

namespace orbitmoment::hyper {

// Edges are multisets of exactly d vertices (0-based), stored sorted. An
// edge with fewer than d distinct vertices is a padded edge of a non-uniform
// hypergraph; padding is the caller's choice.
class Hypergraph {
 public:
  /// Throws ValidationError on out-of-range vertices, edges whose size is
  /// not d, duplicate edges, or a weight list of the wrong length. Empty
  /// `weights` means every edge has weight 1.
  Hypergraph(std::size_t n, std::size_t d, std::vector<std::vector<std::size_t>> edges,
             std::vector<Rational> weights = {});

  std::size_t n() const { return n_; }
  std::size_t d() const { return d_; }
  const std::vector<std::vector<std::size_t>>& edges() const { return edges_; }
  const std::vector<Rational>& weights() const { return weights_; }
  std::size_t edge_count() const { return edges_.size(); }

  /// Every edge consists of d distinct vertices.
  bool uniform() const;

  /// Index of the edge equal to the given multiset, or -1.
  std::ptrdiff_t find_edge(std::vector<std::size_t> multiset) const;

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<std::vector<std::size_t>> edges_;
  std::vector<Rational> weights_;
};

enum class Role { kSource, kTarget };

/// Source: weight at every ordering of each edge. Target: weight times
/// k_1! ... k_r! / d! at every ordering, k_i the vertex multiplicities, so
/// that each matched edge contributes exactly w1 * w2.
assign::DenseTensor adjacency_tensor(const Hypergraph& h, Role role);

/// <B(H2), g A(H1)>: the (weighted) number of edges e of H1 with g(e) in H2.
Rational matched_edges(const Hypergraph& h1, const Hypergraph& h2,
                       const assign::Permutation& g);

/// The same quantity by direct counting: every edge of H2 is pulled back
/// through g^{-1} and looked up among the edges of H1.
Rational matched_edges_direct(const Hypergraph& h1, const Hypergraph& h2,
                              const assign::Permutation& g);

struct Alignment {
  assign::Permutation permutation;
  Rational matched;
  Interval bounds;
};

/// Sandwich on the best achievable matching plus the greedy bijection.
Alignment align(const Hypergraph& h1, const Hypergraph& h2, std::uint32_t k,
                std::uint64_t visit_budget = assign::kDefaultVisitBudget);

}  // namespace orbitmoment::hyper
