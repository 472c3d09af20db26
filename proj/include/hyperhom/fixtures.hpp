#pragma once

#include <span>
#include <vector>

#include "hyperhom/abelian.hpp"
#include "hyperhom/rational.hpp"
#include "hyperhom/relation.hpp"
#include "hyperhom/symfunc.hpp"

// Named weight functions shared by the tests and `hyperhom selftest`.
namespace hyperhom::fixtures {

/// Constant 1 on {0..q-1}^r.
SymFunc all_ones(int q, int r = 3);

/// 1 iff z_1 + ... + z_r is even, q = 2.
SymFunc parity(int r = 3);

/// q = 2, weight 2^{number of 1s}: 1, 2, 4, 8 for r = 3.
SymFunc geometric();

/// Z_2 x [2] with element 2*alpha + i; weight 3^{#(i = 1)} [alpha sum even].
SymFunc mixed();

/// q = 2, r = 3, 1 except on (0,0,0).
SymFunc not_all_zero();

/// 0/1 Steiner quasigroup relation of the Fano plane: blocks plus the diagonal.
SymFunc steiner7();

/// A 4-ary Latin relation on 4 elements whose padded triples form an Abelian
/// group but which is not the solution set of a group equation.
SymFunc latin_not_equational();

/// 0/1 relation {z_1 + ... + z_r = target mod m}.
SymFunc sum_relation(int m, int r, int target = 0);

/// parity on {0,1} next to all-ones on {2,3}.
SymFunc two_component();

/// 0/1 weight function of a relation.
SymFunc indicator(const SymRelation& S);

/// Weight on the disjoint union of domains; tuples straddling the two are 0.
SymFunc direct_sum(const SymFunc& a, const SymFunc& b);

/// Tractable function on A x [s] for A = product of Z_{moduli}:
/// g((alpha_t, i_t)) = prod_t lambda[i_t] [sum alpha_t = target]. Element (alpha, i)
/// gets id labels[alpha * s + i] (identity labeling when `labels` is empty).
SymFunc constructed(std::span<const int> moduli, int r, std::span<const Rational> lambda, int target,
                    std::span<const int> labels = {});

}  // namespace hyperhom::fixtures
