#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hyperhom/instance.hpp"
#include "hyperhom/int_matrix.hpp"
#include "hyperhom/rational.hpp"

namespace hyperhom {

/// Finite Abelian group on elements 0..order-1 given by its Cayley table.
class AbelianGroup {
public:
  AbelianGroup() = default;
  /// `table[a * order + b]` is a + b. Verifies every axiom exhaustively;
  /// throws std::invalid_argument naming the first failure.
  AbelianGroup(int order, std::vector<int> table, int zero);

  static AbelianGroup cyclic(int d);
  /// Direct product Z_{d_1} x ... x Z_{d_t}, elements in mixed-radix order.
  static AbelianGroup product(std::span<const int> moduli);

  [[nodiscard]] int order() const { return order_; }
  [[nodiscard]] int zero() const { return zero_; }
  [[nodiscard]] int add(int a, int b) const { return table_[static_cast<std::size_t>(a * order_ + b)]; }
  [[nodiscard]] int neg(int a) const { return neg_[static_cast<std::size_t>(a)]; }
  [[nodiscard]] int sub(int a, int b) const { return add(a, neg(b)); }
  /// n-fold sum a + ... + a (n >= 0).
  [[nodiscard]] int times(long n, int a) const;
  [[nodiscard]] const std::vector<int>& table() const { return table_; }

private:
  int order_ = 0;
  int zero_ = 0;
  std::vector<int> table_;
  std::vector<int> neg_;
};

/// Invariant-factor form d_1 | d_2 | ... | d_t with an explicit isomorphism.
struct CyclicDecomposition {
  std::vector<long> factors;            // empty for the trivial group
  std::vector<std::vector<long>> iso;   // element -> residues, iso[e][i] in [0, factors[i])

  /// Inverse of iso.
  [[nodiscard]] int element_of(std::span<const long> residues) const;
  /// Refinement into prime-power cyclic factors, ascending.
  [[nodiscard]] std::vector<long> prime_power_factors() const;
};

/// Reads the invariant factors off the Smith form of the Cayley-table presentation.
CyclicDecomposition decompose(const AbelianGroup& A);

/// Number of x in (Z_d)^n with M x = c (mod d), via one Smith normal form of M.
BigInt count_solutions_mod(const IntMatrix& M, std::span<const BigInt> c, long d);

/// Sparse row: (column, coefficient) pairs.
using SparseRow = std::vector<std::pair<int, long>>;

/// Same count, computed prime-power by prime-power with elimination over Z/p^e.
/// Used on large occurrence systems where an integer Smith form is impractical.
BigInt count_solutions_mod_local(int n, std::span<const SparseRow> rows,
                                 std::span<const long> c, long d);

/// Scope-by-variable occurrence-count matrix.
IntMatrix occurrence_matrix(const CspInstance& I);

/// |{sigma : V -> A : sum over each scope of sigma = a}|.
BigInt count_homs(const CyclicDecomposition& dec, int a, const CspInstance& I);
BigInt count_homs(const CyclicDecomposition& dec, int a, const Hypergraph& G);

}  // namespace hyperhom
