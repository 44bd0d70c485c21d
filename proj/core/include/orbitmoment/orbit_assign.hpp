#pragma once

// The d-dimensional assignment problem over the symmetric group S_n.
//
// For order-d tensors A, B of side n the objective is the matrix element
//
//   f(g) = <B, gA> = sum_I a_I b_{g(I)},     (gX)_{g(I)} = x_I.
//
// Its even moments (1/n!) sum_g f(g)^{2k} are computed exactly by viewing
// f^{2k} as a matrix element of the virtual tensor powers A^{(x)2k},
// B^{(x)2k} and averaging over the orbits of index sequences, which are
// classified by their equality pattern (set partition of positions). The
// same orbit sums restricted to a coset {g : g(i) = j for fixed pairs} drive
// greedy extraction of a good permutation.
//
// Indices, permutation images and vertex labels are 0-based in this API;
// the JSON layer converts from the 1-based file formats.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "orbitmoment/exactnum.hpp"
#include "orbitmoment/interval.hpp"

namespace orbitmoment::assign {

inline constexpr std::uint64_t kDefaultVisitBudget = 100'000'000;
inline constexpr std::size_t kDefaultBruteCap = 9;

// Order-d tensor of side n over the rationals, stored densely in row-major
// order (last index fastest).
class DenseTensor {
 public:
  DenseTensor(std::size_t n, std::size_t d);

  std::size_t n() const { return n_; }
  std::size_t order() const { return d_; }
  std::size_t size() const { return entries_.size(); }

  const Rational& operator[](std::size_t linear) const { return entries_[linear]; }
  Rational& operator[](std::size_t linear) { return entries_[linear]; }

  const Rational& at(std::span<const std::size_t> index) const;
  void set(std::span<const std::size_t> index, const Rational& value);

  std::size_t linear_index(std::span<const std::size_t> index) const;
  std::vector<std::size_t> multi_index(std::size_t linear) const;

  std::span<const Rational> entries() const { return entries_; }

  /// Every entry is 0 or 1.
  bool is_binary() const;
  bool is_zero() const;

  friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<Rational> entries_;
};

class Permutation {
 public:
  /// Throws ValidationError unless images is a bijection of {0..n-1}.
  explicit Permutation(std::vector<std::size_t> images);

  static Permutation identity(std::size_t n);

  std::size_t size() const { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::size_t>& images() const { return images_; }

  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> images_;
};

/// (g * h)(i) = g(h(i)).
Permutation compose(const Permutation& g, const Permutation& h);

// Fixed pairs (i, g(i)) of a partial permutation, injective in both
// coordinates. The pairs keep their insertion order.
class PartialAssignment {
 public:
  explicit PartialAssignment(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> fixed = {});

  std::size_t n() const { return n_; }
  std::size_t length() const { return fixed_.size(); }
  const std::vector<std::pair<std::size_t, std::size_t>>& fixed() const { return fixed_; }

  /// Returns a copy with (i, j) appended; throws on conflicts.
  PartialAssignment extended(std::size_t i, std::size_t j) const;

  bool contains(const Permutation& g) const;

 private:
  std::size_t n_;
  std::vector<std::pair<std::size_t, std::size_t>> fixed_;
};

// Equality pattern of an index sequence: positions grouped by equal value,
// blocks ordered by their smallest position.
struct IndexType {
  std::vector<std::vector<std::size_t>> blocks;

  std::size_t r() const { return blocks.size(); }
  friend bool operator==(const IndexType&, const IndexType&) = default;
};

IndexType index_type(std::span<const std::size_t> sequence, std::size_t n);

/// gX, with (gX)_{g(I)} = x_I.
DenseTensor apply_perm(const Permutation& g, const DenseTensor& x);

/// <B, gA>.
Rational matrix_element(const DenseTensor& a, const DenseTensor& b, const Permutation& g);

/// (1/n!) sum_g <B, gA>^{2k}. Throws BudgetError when n^{2kd} exceeds
/// visit_budget.
Rational moment_2k(const DenseTensor& a, const DenseTensor& b, std::uint32_t k,
                   std::uint64_t visit_budget = kDefaultVisitBudget);

double norm_2k(const DenseTensor& a, const DenseTensor& b, std::uint32_t k,
               std::uint64_t visit_budget = kDefaultVisitBudget);

/// Sandwich factor: sum_{j=1}^k C(n^d, j) when A or B is 0/1-valued,
/// C(n^d + k - 1, k) otherwise.
Integer assignment_factor(const DenseTensor& a, const DenseTensor& b, std::uint32_t k);

Interval sup_bounds(const DenseTensor& a, const DenseTensor& b, std::uint32_t k,
                    std::uint64_t visit_budget = kDefaultVisitBudget);

/// Average of f(g)^{2k} over the permutations extending prefix.
Rational coset_moment(const DenseTensor& a, const DenseTensor& b, std::uint32_t k,
                      const PartialAssignment& prefix,
                      std::uint64_t visit_budget = kDefaultVisitBudget);

struct GreedyResult {
  Permutation permutation;
  Rational value;      // f(g)
  double abs_value;    // |f(g)|
  // Moment of the coset chosen after each step, starting with the whole
  // group; the last entry is f(g)^{2k}.
  std::vector<Rational> step_moments;
};

/// Fixes g(0), g(1), ... in turn, each time entering the coset with the
/// largest 2k-th moment (smallest image on ties). |f(g)|^{2k} >= moment_2k.
GreedyResult greedy_extract(const DenseTensor& a, const DenseTensor& b, std::uint32_t k,
                            std::uint64_t visit_budget = kDefaultVisitBudget);

struct BruteResult {
  Permutation permutation;
  Rational value;  // f at the maximizer of |f|
};

/// Exact argmax of |f| over all n! permutations, lexicographically smallest
/// image list on ties. Throws ValidationError when n > cap.
BruteResult brute_max(const DenseTensor& a, const DenseTensor& b,
                      std::size_t cap = kDefaultBruteCap);

}  // namespace orbitmoment::assign
