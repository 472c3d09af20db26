#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hyperhom/rational.hpp"

namespace hyperhom {

/// Symmetric weight function D^r -> Q>=0 on the domain {0..q-1}.
///
/// Only one value per sorted r-multiset is stored; lookups at an arbitrary
/// tuple resolve to its sorted key. Immutable once built.
class SymFunc {
public:
  SymFunc() = default;

  /// All-zero function.
  SymFunc(int q, int arity);

  /// Builds the table by evaluating `weight` on every sorted key.
  static SymFunc tabulate(int q, int arity,
                          const std::function<Rational(std::span<const int>)>& weight);

  [[nodiscard]] int domain_size() const { return q_; }
  [[nodiscard]] int arity() const { return arity_; }

  /// Value at an arbitrary (unsorted) tuple of length arity().
  [[nodiscard]] const Rational& at(std::span<const int> tuple) const;
  [[nodiscard]] const Rational& at(std::initializer_list<int> tuple) const {
    return at(std::span<const int>(tuple.begin(), tuple.size()));
  }

  /// Returns a copy with the value at `tuple` replaced (must stay >= 0).
  [[nodiscard]] SymFunc with_weight(std::span<const int> tuple, const Rational& value) const;

  /// Visits every sorted key with its value, in lexicographic key order.
  void for_each(const std::function<void(std::span<const int>, const Rational&)>& visit) const;

  /// Number of stored (sorted) keys.
  [[nodiscard]] std::size_t key_count() const { return weights_.size(); }
  [[nodiscard]] bool is_zero() const;

  friend bool operator==(const SymFunc& a, const SymFunc& b) {
    return a.q_ == b.q_ && a.arity_ == b.arity_ && a.weights_ == b.weights_;
  }

private:
  [[nodiscard]] std::size_t slot(std::span<const int> tuple) const;
  void build_index();

  int q_ = 0;
  int arity_ = 0;
  std::vector<Rational> weights_;       // by colex multiset rank
  std::vector<std::uint32_t> dense_;    // mixed-radix tuple code -> rank, when small
};

/// The k-ary marginal f^(k); the same representation as a weight function.
using MarginalTable = SymFunc;

/// f^(k)(z_1..z_k) = sum over z_{k+1..r} in D of g(z_1..z_r); f^(r) = g.
MarginalTable marginalize(const SymFunc& g, int k);

struct PrunedDomain {
  SymFunc function;            // relabeled onto the surviving elements
  std::vector<int> kept;       // new id -> original id
  std::vector<int> removed;    // original ids with f^(1) = 0
};

/// Drops domain elements that occur in no positive-weight tuple.
PrunedDomain prune_domain(const SymFunc& g);

/// Elements of g with positive f^(1), ascending.
std::vector<int> participating_elements(const SymFunc& g);

/// Restriction of g to `keep` (original ids), relabeled 0..|keep|-1 in the given order.
SymFunc restrict_domain(const SymFunc& g, std::span<const int> keep);

/// Classes of the reflexive-transitive closure of the support of f^(2),
/// each sorted, listed by least element. Requires every element to participate.
std::vector<std::vector<int>> domain_components(const SymFunc& g);

/// Same, restricted to the given participating elements (original ids).
std::vector<std::vector<int>> domain_components(const SymFunc& g, std::span<const int> elements);

}  // namespace hyperhom
