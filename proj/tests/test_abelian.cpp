#include <doctest.h>

#include <random>

#include "hyperhom/abelian.hpp"
#include "hyperhom/dichotomy.hpp"
#include "hyperhom/fixtures.hpp"
#include "oracles.hpp"

using namespace hyperhom;

namespace {

void check_iso(const AbelianGroup& A, const CyclicDecomposition& dec) {
  long product = 1;
  for (long f : dec.factors) product *= f;
  CHECK(product == A.order());
  for (std::size_t i = 0; i + 1 < dec.factors.size(); ++i) CHECK(dec.factors[i + 1] % dec.factors[i] == 0);
  for (int a = 0; a < A.order(); ++a) {
    CHECK(dec.element_of(dec.iso[static_cast<std::size_t>(a)]) == a);
    for (int b = 0; b < A.order(); ++b) {
      const auto& sum = dec.iso[static_cast<std::size_t>(A.add(a, b))];
      for (std::size_t f = 0; f < dec.factors.size(); ++f) {
        CHECK(sum[f] == (dec.iso[static_cast<std::size_t>(a)][f] + dec.iso[static_cast<std::size_t>(b)][f]) % dec.factors[f]);
      }
    }
  }
}

GroupStructure shifted_z4() {
  const SymRelation S(4, 3, [](std::span<const int> t) { return (t[0] + t[1] + t[2]) % 4 == 0; });
  return std::get<GroupStructure>(reconstruct_group(S, 1));
}

}  // namespace

TEST_SUITE("abelian") {

TEST_CASE("decompose examples") {
  CHECK(decompose(AbelianGroup::cyclic(2)).factors == std::vector<long>{2});
  const std::vector<int> klein{2, 2};
  CHECK(decompose(AbelianGroup::product(klein)).factors == std::vector<long>{2, 2});
  const GroupStructure gs = shifted_z4();
  CHECK(gs.decomposition.factors == std::vector<long>{4});
  CHECK(gs.decomposition.iso[1] == std::vector<long>{0});
  CHECK(decompose(AbelianGroup::cyclic(1)).factors.empty());
}

TEST_CASE("decompose products of cyclic groups") {
  const std::vector<std::vector<int>> cases{{6}, {2, 3}, {4, 2}, {2, 2, 2}, {3, 3}, {2, 6}, {12}, {2, 4}};
  const std::vector<std::vector<long>> expect{{6}, {6}, {2, 4}, {2, 2, 2}, {3, 3}, {2, 6}, {12}, {2, 4}};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const AbelianGroup A = AbelianGroup::product(cases[i]);
    const CyclicDecomposition dec = decompose(A);
    CHECK(dec.factors == expect[i]);
    check_iso(A, dec);
  }
  const std::vector<int> m{2, 6};
  CHECK(decompose(AbelianGroup::product(m)).prime_power_factors() == std::vector<long>{2, 2, 3});
}

TEST_CASE("group axioms are enforced") {
  CHECK_THROWS_AS(AbelianGroup(2, {0, 1, 1, 1}, 0), std::invalid_argument);
  CHECK_THROWS_AS(AbelianGroup(2, {0, 1, 1, 0}, 1), std::invalid_argument);
}

TEST_CASE("count_solutions_mod examples") {
  const std::vector<BigInt> zero1{0};
  const std::vector<BigInt> one1{1};
  CHECK(count_solutions_mod(IntMatrix{{1, 1}}, zero1, 2) == 2);
  CHECK(count_solutions_mod(IntMatrix{{0}}, one1, 2) == 0);
  CHECK(count_solutions_mod(IntMatrix{{1, 1, 1}}, zero1, 4) == 16);
}

TEST_CASE("count_solutions_mod and the local route agree with enumeration") {
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<int> nd(1, 5), md(1, 4), dd(1, 6), ed(0, 3);
  for (int t = 0; t < 200; ++t) {
    const int n = nd(rng), m = md(rng);
    const long d = dd(rng);
    std::vector<std::vector<long>> M(static_cast<std::size_t>(m), std::vector<long>(static_cast<std::size_t>(n)));
    std::vector<long> c(static_cast<std::size_t>(m));
    IntMatrix IM(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
    std::vector<BigInt> cb;
    std::vector<SparseRow> rows(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        M[i][j] = ed(rng);
        IM(i, j) = M[i][j];
        if (M[i][j]) rows[i].emplace_back(j, M[i][j]);
      }
      c[i] = std::uniform_int_distribution<long>(0, d - 1)(rng);
      cb.emplace_back(c[i]);
    }
    const long expect = oracle::count_mod(M, c, d, n);
    CHECK(count_solutions_mod(IM, cb, d) == expect);
    CHECK(count_solutions_mod_local(n, rows, c, d) == expect);
  }
}

TEST_CASE("count_homs examples") {
  const CyclicDecomposition z2 = decompose(AbelianGroup::cyclic(2));
  CHECK(count_homs(z2, 0, Hypergraph(3, {{0, 1, 2}})) == 4);
  const GroupStructure gs = shifted_z4();
  CHECK(gs.a == 2);
  CHECK(count_homs(gs.decomposition, gs.a, Hypergraph(3, {{0, 1, 2}})) == 16);
  CHECK(count_homs(z2, 0, Hypergraph(4, {{0, 1, 2}, {0, 1, 3}})) == 4);
  CHECK(count_homs(decompose(AbelianGroup::cyclic(1)), 0, Hypergraph(3, {{0, 1, 2}})) == 1);
}

TEST_CASE("count_homs agrees with enumeration") {
  std::mt19937_64 rng(23);
  const std::vector<std::vector<int>> groups{{2}, {3}, {4}, {2, 2}};
  for (int t = 0; t < 60; ++t) {
    const AbelianGroup A = AbelianGroup::product(groups[static_cast<std::size_t>(t) % groups.size()]);
    const CyclicDecomposition dec = decompose(A);
    std::uniform_int_distribution<int> nd(1, 7), vd(0, 6), ad(0, A.order() - 1);
    CspInstance I;
    I.n = nd(rng);
    const int m = std::uniform_int_distribution<int>(0, 4)(rng);
    for (int e = 0; e < m; ++e) {
      Scope s;
      for (int k = 0; k < 3; ++k) s.push_back(vd(rng) % I.n);
      I.scopes.push_back(s);
    }
    if (t % 3 == 0 && I.n > 1) I.equalities.emplace_back(0, I.n - 1);
    const int a = ad(rng);
    CHECK(count_homs(dec, a, I) == oracle::homs(A, a, I));
  }
}

TEST_CASE("occurrence matrix rows sum to the arity") {
  const IntMatrix M = occurrence_matrix(CspInstance{3, {{0, 0, 1}, {2, 1, 0}}, {}});
  CHECK(M == IntMatrix{{2, 1, 0}, {1, 1, 1}});
}

}
