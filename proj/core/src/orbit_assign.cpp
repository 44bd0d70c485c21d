#include "orbitmoment/orbit_assign.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "orbitmoment/errors.hpp"

namespace orbitmoment::assign {
namespace {

constexpr std::size_t kMaxTensorEntries = std::size_t{1} << 28;

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) return std::nullopt;
    r *= base;
  }
  return r;
}

void require_same_shape(const DenseTensor& a, const DenseTensor& b) {
  if (a.n() != b.n() || a.order() != b.order()) {
    throw ValidationError("tensor shapes differ: (n=" + std::to_string(a.n()) +
                          ", d=" + std::to_string(a.order()) + ") vs (n=" +
                          std::to_string(b.n()) + ", d=" + std::to_string(b.order()) + ")");
  }
}

void require_perm_size(const DenseTensor& x, const Permutation& g) {
  if (g.size() != x.n()) throw ValidationError("permutation size differs from tensor side");
}

void check_visit_budget(std::size_t n, std::size_t d, std::uint32_t k, std::uint64_t budget) {
  const std::uint64_t length = std::uint64_t{2} * k * d;
  const auto visits = checked_pow(n, length);
  if (!visits || *visits > budget) {
    throw BudgetError("enumeration of " + std::to_string(n) + "^" + std::to_string(length) +
                          " index sequences exceeds the visit budget " + std::to_string(budget) +
                          " at k=" + std::to_string(k),
                      static_cast<int>(k));
  }
}

// Tensor with integer entries: original = entries / scale.
struct IntegerTensor {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<Integer> entries;
  Integer scale = 1;

  explicit IntegerTensor(const DenseTensor& t) : n(t.n()), d(t.order()) {
    scale = common_denominator(t.entries());
    entries.reserve(t.size());
    for (const auto& v : t.entries()) entries.push_back(v.get_num() * (scale / v.get_den()));
  }
};

// Orbit sums of a virtual tensor power T^{(x)m} restricted to a coset.
//
// Sequences J in [n]^l (l = m d) are classified by a label word: a position
// whose value is the i-th forced value gets label i (< t); the remaining
// values are labelled t, t+1, ... in order of first appearance. For a word
// w with r free labels, side_sum(w) adds the product of the m tensor entries
// over all injective assignments of the free labels into `available`.
class PowerOrbitSums {
 public:
  PowerOrbitSums(const IntegerTensor& tensor, std::uint32_t power,
                 std::vector<std::size_t> forced, std::vector<std::size_t> available)
      : tensor_(tensor),
        power_(power),
        forced_(std::move(forced)),
        available_(std::move(available)),
        used_(tensor.n, false) {
    strides_.assign(tensor.d, 1);
    for (std::size_t j = tensor.d; j-- > 1;) strides_[j - 1] = strides_[j] * tensor.n;
  }

  Integer side_sum(std::span<const std::uint32_t> word, std::size_t free_count) {
    const std::size_t t = forced_.size();
    const std::size_t d = tensor_.d;
    // Level at which each block's entry becomes known: one past the largest
    // free label it contains, or 0 if all of its labels are forced.
    levels_.assign(free_count + 1, {});
    for (std::size_t b = 0; b < power_; ++b) {
      std::size_t level = 0;
      for (std::size_t j = 0; j < d; ++j) {
        const auto label = word[b * d + j];
        if (label >= t) level = std::max<std::size_t>(level, label - t + 1);
      }
      levels_[level].push_back(b);
    }
    free_values_.assign(free_count, 0);
    partial_.resize(free_count + 1);
    word_ = word;

    partial_[0] = 1;
    if (!multiply_level(0, partial_[0])) return 0;
    Integer total = 0;
    descend(0, free_count, total);
    return total;
  }

 private:
  std::size_t value_at(std::size_t position) const {
    const auto label = word_[position];
    return label < forced_.size() ? forced_[label] : free_values_[label - forced_.size()];
  }

  // Multiplies in the entries of the blocks completed at `level`; false if
  // the product became zero.
  bool multiply_level(std::size_t level, Integer& acc) const {
    const std::size_t d = tensor_.d;
    for (auto b : levels_[level]) {
      std::size_t linear = 0;
      for (std::size_t j = 0; j < d; ++j) linear += value_at(b * d + j) * strides_[j];
      const Integer& entry = tensor_.entries[linear];
      if (entry == 0) return false;
      acc *= entry;
    }
    return true;
  }

  void descend(std::size_t depth, std::size_t free_count, Integer& total) {
    if (depth == free_count) {
      total += partial_[depth];
      return;
    }
    for (auto v : available_) {
      if (used_[v]) continue;
      used_[v] = true;
      free_values_[depth] = v;
      partial_[depth + 1] = partial_[depth];
      if (multiply_level(depth + 1, partial_[depth + 1])) descend(depth + 1, free_count, total);
      used_[v] = false;
    }
  }

  const IntegerTensor& tensor_;
  std::size_t power_;
  std::vector<std::size_t> forced_;
  std::vector<std::size_t> available_;
  std::vector<bool> used_;
  std::vector<std::size_t> strides_;
  std::vector<std::vector<std::size_t>> levels_;
  std::vector<std::size_t> free_values_;
  std::vector<Integer> partial_;
  std::span<const std::uint32_t> word_;
};

// Calls visit(word, free_count) for every label word of length `length` with
// `forced` fixed labels and at most `max_free` free labels, in canonical
// (restricted growth) order.
template <typename Visit>
void for_each_word(std::size_t length, std::size_t forced, std::size_t max_free, Visit&& visit) {
  std::vector<std::uint32_t> word(length);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t free_used) -> void {
    if (pos == length) {
      visit(std::span<const std::uint32_t>(word), free_used);
      return;
    }
    for (std::size_t label = 0; label < forced + free_used; ++label) {
      word[pos] = static_cast<std::uint32_t>(label);
      self(self, pos + 1, free_used);
    }
    if (free_used < max_free) {
      word[pos] = static_cast<std::uint32_t>(forced + free_used);
      self(self, pos + 1, free_used + 1);
    }
  };
  rec(rec, 0, 0);
}

struct CosetSides {
  std::vector<std::size_t> domain;     // forced positions, prefix order
  std::vector<std::size_t> images;     // their images, same order
  std::vector<std::size_t> free_domain;
  std::vector<std::size_t> free_images;
};

CosetSides split_coset(std::size_t n, const PartialAssignment& prefix) {
  CosetSides s;
  std::vector<bool> in_domain(n, false), in_image(n, false);
  for (const auto& [i, j] : prefix.fixed()) {
    s.domain.push_back(i);
    s.images.push_back(j);
    in_domain[i] = true;
    in_image[j] = true;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!in_domain[v]) s.free_domain.push_back(v);
    if (!in_image[v]) s.free_images.push_back(v);
  }
  return s;
}

// Exact coset average of f^{2k}, computed from aligned orbit sums of the
// integer-scaled tensors. `x_sums`, when given, holds the A-side sums of the
// words in canonical order and is reused.
Rational coset_average(const IntegerTensor& a, const IntegerTensor& b, std::uint32_t k,
                       const CosetSides& sides, const std::vector<Integer>* x_sums) {
  const std::size_t n = a.n;
  const std::size_t t = sides.domain.size();
  const std::size_t free_slots = n - t;
  const std::uint32_t power = 2 * k;
  const std::size_t length = static_cast<std::size_t>(power) * a.d;

  PowerOrbitSums xs(a, power, sides.domain, sides.free_domain);
  PowerOrbitSums ys(b, power, sides.images, sides.free_images);

  // Products grouped by number of free labels; each group is divided by the
  // number of injective placements (n-t)(n-t-1)...
  std::vector<Integer> by_free(free_slots + 1, 0);
  std::size_t word_index = 0;
  Integer sx;
  for_each_word(length, t, free_slots, [&](std::span<const std::uint32_t> w, std::size_t r) {
    sx = x_sums ? (*x_sums)[word_index] : xs.side_sum(w, r);
    ++word_index;
    if (sx == 0) return;
    const Integer sy = ys.side_sum(w, r);
    if (sy == 0) return;
    mpz_addmul(by_free[r].get_mpz_t(), sx.get_mpz_t(), sy.get_mpz_t());
  });

  Rational total = 0;
  for (std::size_t r = 0; r <= free_slots; ++r) {
    if (by_free[r] == 0) continue;
    total += make_rational(by_free[r], falling_factorial(free_slots, r));
  }
  Integer scale = a.scale * b.scale;
  mpz_pow_ui(scale.get_mpz_t(), scale.get_mpz_t(), power);
  return total / Rational(scale);
}

std::vector<Integer> word_sums(const IntegerTensor& t, std::uint32_t power,
                               const std::vector<std::size_t>& forced,
                               const std::vector<std::size_t>& available) {
  PowerOrbitSums sums(t, power, forced, available);
  std::vector<Integer> out;
  for_each_word(static_cast<std::size_t>(power) * t.d, forced.size(), available.size(),
                [&](std::span<const std::uint32_t> w, std::size_t r) {
                  out.push_back(sums.side_sum(w, r));
                });
  return out;
}

Integer scaled_matrix_element(const IntegerTensor& a, const IntegerTensor& b,
                              const std::vector<std::size_t>& nonzero_a,
                              std::span<const std::size_t> images) {
  const std::size_t n = a.n;
  const std::size_t d = a.d;
  Integer total = 0;
  for (auto linear : nonzero_a) {
    std::size_t rest = linear;
    std::size_t target = 0;
    std::size_t place = 1;
    for (std::size_t j = 0; j < d; ++j) {
      target += images[rest % n] * place;
      rest /= n;
      place *= n;
    }
    const Integer& bv = b.entries[target];
    if (bv != 0) mpz_addmul(total.get_mpz_t(), a.entries[linear].get_mpz_t(), bv.get_mpz_t());
  }
  return total;
}

std::vector<std::size_t> nonzero_positions(const IntegerTensor& t) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    if (t.entries[i] != 0) out.push_back(i);
  }
  return out;
}

}  // namespace

DenseTensor::DenseTensor(std::size_t n, std::size_t d) : n_(n), d_(d) {
  if (n == 0 || d == 0) throw ValidationError("tensor needs n >= 1 and d >= 1");
  const auto count = checked_pow(n, d);
  if (!count || *count > kMaxTensorEntries) {
    throw BudgetError("tensor with n^d = " + std::to_string(n) + "^" + std::to_string(d) +
                      " entries is too large to store");
  }
  entries_.assign(*count, Rational(0));
}

std::size_t DenseTensor::linear_index(std::span<const std::size_t> index) const {
  if (index.size() != d_) throw ValidationError("index has wrong length");
  std::size_t linear = 0;
  for (auto i : index) {
    if (i >= n_) throw ValidationError("index value out of range");
    linear = linear * n_ + i;
  }
  return linear;
}

std::vector<std::size_t> DenseTensor::multi_index(std::size_t linear) const {
  std::vector<std::size_t> index(d_);
  for (std::size_t j = d_; j-- > 0;) {
    index[j] = linear % n_;
    linear /= n_;
  }
  return index;
}

const Rational& DenseTensor::at(std::span<const std::size_t> index) const {
  return entries_[linear_index(index)];
}

void DenseTensor::set(std::span<const std::size_t> index, const Rational& value) {
  entries_[linear_index(index)] = value;
}

bool DenseTensor::is_binary() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Rational& v) { return v == 0 || v == 1; });
}

bool DenseTensor::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Rational& v) { return sgn(v) == 0; });
}

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto v : images_) {
    if (v >= images_.size() || seen[v]) throw ValidationError("not a permutation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> images(n);
  std::iota(images.begin(), images.end(), std::size_t{0});
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation compose(const Permutation& g, const Permutation& h) {
  if (g.size() != h.size()) throw ValidationError("composing permutations of different size");
  std::vector<std::size_t> images(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) images[i] = g(h(i));
  return Permutation(std::move(images));
}

PartialAssignment::PartialAssignment(std::size_t n,
                                     std::vector<std::pair<std::size_t, std::size_t>> fixed)
    : n_(n), fixed_(std::move(fixed)) {
  std::vector<bool> pos(n, false), img(n, false);
  for (const auto& [i, j] : fixed_) {
    if (i >= n || j >= n) throw ValidationError("partial assignment entry out of range");
    if (pos[i]) throw ValidationError("partial assignment repeats a position");
    if (img[j]) throw ValidationError("partial assignment repeats an image");
    pos[i] = img[j] = true;
  }
}

PartialAssignment PartialAssignment::extended(std::size_t i, std::size_t j) const {
  auto fixed = fixed_;
  fixed.emplace_back(i, j);
  return PartialAssignment(n_, std::move(fixed));
}

bool PartialAssignment::contains(const Permutation& g) const {
  return std::all_of(fixed_.begin(), fixed_.end(),
                     [&](const auto& ij) { return g(ij.first) == ij.second; });
}

IndexType index_type(std::span<const std::size_t> sequence, std::size_t n) {
  IndexType type;
  std::vector<std::ptrdiff_t> block_of(n, -1);
  for (std::size_t pos = 0; pos < sequence.size(); ++pos) {
    const auto v = sequence[pos];
    if (v >= n) throw ValidationError("index value out of range");
    if (block_of[v] < 0) {
      block_of[v] = static_cast<std::ptrdiff_t>(type.blocks.size());
      type.blocks.emplace_back();
    }
    type.blocks[static_cast<std::size_t>(block_of[v])].push_back(pos);
  }
  return type;
}

DenseTensor apply_perm(const Permutation& g, const DenseTensor& x) {
  require_perm_size(x, g);
  DenseTensor out(x.n(), x.order());
  for (std::size_t linear = 0; linear < x.size(); ++linear) {
    auto index = x.multi_index(linear);
    for (auto& i : index) i = g(i);
    out[out.linear_index(index)] = x[linear];
  }
  return out;
}

Rational matrix_element(const DenseTensor& a, const DenseTensor& b, const Permutation& g) {
  require_same_shape(a, b);
  require_perm_size(a, g);
  Rational total = 0;
  for (std::size_t linear = 0; linear < a.size(); ++linear) {
    if (sgn(a[linear]) == 0) continue;
    auto index = a.multi_index(linear);
    for (auto& i : index) i = g(i);
    total += a[linear] * b.at(index);
  }
  return total;
}

Rational coset_moment(const DenseTensor& a, const DenseTensor& b, std::uint32_t k,
                      const PartialAssignment& prefix, std::uint64_t visit_budget) {
  require_same_shape(a, b);
  if (k == 0) throw ValidationError("k must be positive");
  if (prefix.n() != a.n()) throw ValidationError("partial assignment size differs from n");
  check_visit_budget(a.n(), a.order(), k, visit_budget);
  const IntegerTensor ia(a), ib(b);
  return coset_average(ia, ib, k, split_coset(a.n(), prefix), nullptr);
}

Rational moment_2k(const DenseTensor& a, const DenseTensor& b, std::uint32_t k,
                   std::uint64_t visit_budget) {
  return coset_moment(a, b, k, PartialAssignment(a.n()), visit_budget);
}

double norm_2k(const DenseTensor& a, const DenseTensor& b, std::uint32_t k,
               std::uint64_t visit_budget) {
  return root_2k(moment_2k(a, b, k, visit_budget), k);
}

Integer assignment_factor(const DenseTensor& a, const DenseTensor& b, std::uint32_t k) {
  require_same_shape(a, b);
  if (k == 0) throw ValidationError("k must be positive");
  const auto dim = checked_pow(a.n(), a.order());
  if (a.is_binary() || b.is_binary()) {
    Integer f = 0;
    for (std::uint32_t j = 1; j <= k; ++j) f += binomial(*dim, j);
    return f;
  }
  return binomial(*dim + k - 1, k);
}

Interval sup_bounds(const DenseTensor& a, const DenseTensor& b, std::uint32_t k,
                    std::uint64_t visit_budget) {
  return make_interval(moment_2k(a, b, k, visit_budget), assignment_factor(a, b, k), k);
}

GreedyResult greedy_extract(const DenseTensor& a, const DenseTensor& b, std::uint32_t k,
                            std::uint64_t visit_budget) {
  require_same_shape(a, b);
  if (k == 0) throw ValidationError("k must be positive");
  const std::size_t n = a.n();
  check_visit_budget(n, a.order(), k, visit_budget);
  const IntegerTensor ia(a), ib(b);
  const std::uint32_t power = 2 * k;

  std::vector<Rational> step_moments;
  PartialAssignment prefix(n);
  step_moments.push_back(coset_average(ia, ib, k, split_coset(n, prefix), nullptr));

  std::vector<bool> image_used(n, false);
  for (std::size_t pos = 0; pos < n; ++pos) {
    std::vector<std::size_t> candidates;
    for (std::size_t j = 0; j < n; ++j) {
      if (!image_used[j]) candidates.push_back(j);
    }
    std::size_t best = candidates.front();
    if (candidates.size() > 1) {
      // The A side only depends on which positions are fixed, so its orbit
      // sums are shared by all candidate images.
      const auto probe = split_coset(n, prefix.extended(pos, candidates.front()));
      const auto x_sums = word_sums(ia, power, probe.domain, probe.free_domain);
      std::optional<Rational> best_moment;
      for (auto j : candidates) {
        const auto sides = split_coset(n, prefix.extended(pos, j));
        Rational m = coset_average(ia, ib, k, sides, &x_sums);
        if (!best_moment || m > *best_moment) {
          best_moment = std::move(m);
          best = j;
        }
      }
      step_moments.push_back(*best_moment);
    } else {
      // A single remaining image leaves the coset unchanged.
      step_moments.push_back(step_moments.back());
    }
    prefix = prefix.extended(pos, best);
    image_used[best] = true;
  }

  std::vector<std::size_t> images(n);
  for (const auto& [i, j] : prefix.fixed()) images[i] = j;
  Permutation g(std::move(images));
  Rational value = matrix_element(a, b, g);
  const double abs_value = to_double(abs(value));
  return GreedyResult{std::move(g), std::move(value), abs_value, std::move(step_moments)};
}

BruteResult brute_max(const DenseTensor& a, const DenseTensor& b, std::size_t cap) {
  require_same_shape(a, b);
  const std::size_t n = a.n();
  if (n > cap) {
    throw ValidationError("brute force over S_" + std::to_string(n) + " exceeds the cap n <= " +
                          std::to_string(cap));
  }
  const IntegerTensor ia(a), ib(b);
  const auto nonzero = nonzero_positions(ia);

  std::vector<std::size_t> images(n);
  std::iota(images.begin(), images.end(), std::size_t{0});
  std::vector<std::size_t> best_images = images;
  Integer best_abs = -1;
  Integer best_value = 0;
  do {
    Integer v = scaled_matrix_element(ia, ib, nonzero, images);
    Integer av = abs(v);
    if (av > best_abs) {
      best_abs = std::move(av);
      best_value = std::move(v);
      best_images = images;
    }
  } while (std::next_permutation(images.begin(), images.end()));

  return BruteResult{Permutation(std::move(best_images)),
                     make_rational(best_value, ia.scale * ib.scale)};
}

}  // namespace orbitmoment::assign
