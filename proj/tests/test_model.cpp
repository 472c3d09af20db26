#include <doctest.h>

#include <random>

#include "hyperhom/fixtures.hpp"
#include "hyperhom/instance.hpp"
#include "hyperhom/io.hpp"
#include "hyperhom/multiset.hpp"
#include "hyperhom/symfunc.hpp"

using namespace hyperhom;

namespace {

SymFunc random_function(std::mt19937_64& rng, int q, int r, double zero_rate) {
  std::uniform_real_distribution<double> coin(0, 1);
  std::uniform_int_distribution<int> num(1, 9), den(1, 4);
  return SymFunc::tabulate(q, r, [&](std::span<const int>) {
    if (coin(rng) < zero_rate) return Rational(0);
    return Rational(BigInt(num(rng)), BigInt(den(rng)));
  });
}

std::size_t line_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("multiset ranks are dense") {
  std::uint64_t expected = 0;
  for_each_multiset(4, 3, [&](std::span<const int> t) {
    (void)t;
    ++expected;
  });
  CHECK(multiset_count(4, 3) == expected);
  std::vector<bool> seen(expected, false);
  for_each_multiset(4, 3, [&](std::span<const int> t) { seen[multiset_rank(t)] = true; });
  CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
}

TEST_CASE("symfunc lookup is order free") {
  const SymFunc g = fixtures::geometric();
  CHECK(g.at({1, 0, 0}) == 2);
  CHECK(g.at({0, 1, 0}) == 2);
  CHECK(g.at({1, 1, 0}) == 4);
  CHECK(g.at({1, 1, 1}) == 8);
  CHECK_THROWS(g.at({0, 2, 0}));
  CHECK_THROWS(g.with_weight(std::vector<int>{0, 0, 0}, Rational(-1)));
}

TEST_CASE("load_symfunc examples") {
  const SymFunc g = load_symfunc("symfunc v1\nq 2 r 3\n0 0 0 = 1\n");
  CHECK(g.domain_size() == 2);
  CHECK(g.at({0, 0, 0}) == 1);
  int nonzero = 0;
  g.for_each([&](std::span<const int>, const Rational& w) { nonzero += w.is_zero() ? 0 : 1; });
  CHECK(nonzero == 1);
  const SymFunc h = load_symfunc("# comment\nsymfunc v1\nq 2 r 3\n0 1 1 = 3/6 # half\n");
  CHECK(h.at({1, 0, 1}) == Rational(BigInt(1), BigInt(2)));
}

TEST_CASE("load_symfunc errors carry line numbers") {
  CHECK(line_of([] { load_symfunc("symfunc v1\nq 2 r 3\n0 0 0 = -1\n"); }) == 3);
  CHECK(line_of([] { load_symfunc("symfunc v1\nq 2 r 3\n0 0 1 = 1\n0 0 1 = 2\n"); }) == 4);
  CHECK(line_of([] { load_symfunc("symfunc v1\nq 2 r 3\n0 0 2 = 1\n"); }) == 3);
  CHECK(line_of([] { load_symfunc("symfunc v1\nq 2 r 3\n1 0 0 = 1\n"); }) == 3);
  CHECK(line_of([] { load_symfunc("symfunc v1\nq 2 r 3\n0 0 = 1\n"); }) == 3);
  CHECK(line_of([] { load_symfunc("symfunc v2\n"); }) == 1);
  CHECK_THROWS_WITH(load_symfunc("symfunc v1\nq 2 r 2\n"),
                    doctest::Contains("r >= 3"));
}

TEST_CASE("load_hypergraph and load_csp") {
  CHECK_THROWS_WITH(load_hypergraph("hypergraph v1\nn 3\ne 1 1 2\n"),
                    doctest::Contains("non-distinct edge vertices"));
  CHECK(line_of([] { load_hypergraph("hypergraph v1\nn 3\ne 0 1 2\ne 0 1 2\n"); }) == 4);
  CHECK(line_of([] { load_hypergraph("hypergraph v1\nn 3\ne 0 1 3\n"); }) == 3);
  const Hypergraph G = load_hypergraph("hypergraph v1\nn 4\ne 0 1 2\ne 1 2 3\n");
  CHECK(G.vertex_count() == 4);
  CHECK(G.edge_count() == 2);
  const CspInstance I = load_csp("csp v1\nn 2\nc 1 1 0\nc 1 1 0\neq 0 1\n");
  REQUIRE(I.scopes.size() == 2);
  CHECK(I.scopes[0] == Scope{1, 1, 0});
  CHECK(I.equalities.size() == 1);
  CHECK(std::holds_alternative<CspInstance>(load_instance("csp v1\nn 1\n")));
  CHECK(std::holds_alternative<Hypergraph>(load_instance("hypergraph v1\nn 1\nk 3\n")));
}

TEST_CASE("writers round trip") {
  const SymFunc g = fixtures::mixed();
  CHECK(load_symfunc(write_symfunc(g)) == g);
  const Hypergraph G(5, {{0, 1, 2}, {2, 3, 4}});
  CHECK(load_hypergraph(write_hypergraph(G)) == G);
  const Hypergraph P(3, {{0, 1, 2}, {0, 1, 2}}, true);
  CHECK(load_hypergraph(write_hypergraph(P)) == P);
  const CspInstance I{3, {{0, 0, 1}, {2, 1, 0}}, {{0, 2}}};
  const CspInstance J = load_csp(write_csp(I));
  CHECK(J.scopes == I.scopes);
  CHECK(J.equalities == I.equalities);
}

TEST_CASE("marginal examples") {
  const SymFunc ones = fixtures::all_ones(2, 3);
  const SymFunc m2 = marginalize(ones, 2);
  CHECK(m2.at({0, 0}) == 2);
  CHECK(m2.at({0, 1}) == 2);
  CHECK(m2.at({1, 1}) == 2);
  const SymFunc p = fixtures::parity();
  const SymFunc p2 = marginalize(p, 2);
  CHECK(p2.at({0, 0}) == 1);
  CHECK(p2.at({0, 1}) == 1);
  CHECK(p2.at({1, 1}) == 1);
  const SymFunc p1 = marginalize(p, 1);
  CHECK(p1.at({0}) == 2);
  CHECK(p1.at({1}) == 2);
  CHECK(marginalize(p, 3) == p);
  CHECK_THROWS(marginalize(p, 0));
  CHECK_THROWS(marginalize(p, 4));
}

TEST_CASE("marginal recurrence on random functions") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const int q = 2 + t % 3, r = 3 + t % 2;
    const SymFunc g = random_function(rng, q, r, 0.3);
    for (int k = 1; k < r; ++k) {
      const SymFunc fk = marginalize(g, k);
      const SymFunc fk1 = marginalize(g, k + 1);
      fk.for_each([&](std::span<const int> key, const Rational& w) {
        Rational sum(0);
        std::vector<int> t1(key.begin(), key.end());
        t1.push_back(0);
        for (int z = 0; z < q; ++z) {
          t1.back() = z;
          sum += fk1.at(t1);
        }
        CHECK(sum == w);
      });
    }
  }
}

TEST_CASE("prune_domain examples") {
  const SymFunc g = SymFunc(2, 3).with_weight(std::vector<int>{0, 0, 0}, Rational(1));
  const PrunedDomain p = prune_domain(g);
  CHECK(p.kept == std::vector<int>{0});
  CHECK(p.removed == std::vector<int>{1});
  CHECK(p.function.domain_size() == 1);
  CHECK(prune_domain(fixtures::parity()).function == fixtures::parity());
  const PrunedDomain z = prune_domain(SymFunc(3, 3));
  CHECK(z.function.domain_size() == 0);
  CHECK(z.removed.size() == 3);
}

TEST_CASE("domain_components examples") {
  CHECK(domain_components(fixtures::parity()) == std::vector<std::vector<int>>{{0, 1}});
  CHECK(domain_components(fixtures::two_component()) == std::vector<std::vector<int>>{{0, 1}, {2, 3}});
  CHECK(domain_components(fixtures::all_ones(3)).size() == 1);
}

TEST_CASE("f2 support stays inside components") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const SymFunc g = prune_domain(random_function(rng, 4, 3, 0.8)).function;
    if (g.domain_size() == 0) continue;
    const auto comps = domain_components(g);
    std::vector<int> comp_of(static_cast<std::size_t>(g.domain_size()), -1);
    for (std::size_t c = 0; c < comps.size(); ++c) {
      for (int z : comps[c]) comp_of[static_cast<std::size_t>(z)] = static_cast<int>(c);
    }
    const SymFunc f2 = marginalize(g, 2);
    f2.for_each([&](std::span<const int> key, const Rational& w) {
      if (!w.is_zero()) CHECK(comp_of[static_cast<std::size_t>(key[0])] == comp_of[static_cast<std::size_t>(key[1])]);
    });
  }
}

TEST_CASE("instance_components and degrees examples") {
  InstanceSplit s = instance_components(Hypergraph(4, {{0, 1, 2}}));
  CHECK(s.components.size() == 1);
  CHECK(s.isolated == 1);
  s = instance_components(Hypergraph(6, {{0, 1, 2}, {3, 4, 5}}));
  CHECK(s.components.size() == 2);
  s = instance_components(Hypergraph(5, {{0, 1, 2}, {2, 3, 4}}));
  CHECK(s.components.size() == 1);
  CHECK(s.components[0].vertices == std::vector<int>{0, 1, 2, 3, 4});

  CHECK(degrees(Hypergraph(3, {{0, 1, 2}})) == std::vector<int>{1, 1, 1});
  CHECK(degrees(CspInstance{2, {{0, 0, 1}}, {}}) == std::vector<int>{2, 1});
  CHECK(degrees(Hypergraph(4, {{0, 1, 2}, {0, 1, 3}})) == std::vector<int>{2, 2, 1, 1});
}

TEST_CASE("hypergraph validation") {
  CHECK_THROWS(Hypergraph(3, {{0, 1, 1}}));
  CHECK_THROWS(Hypergraph(3, {{0, 1, 3}}));
  CHECK_THROWS(Hypergraph(3, {{0, 1, 2}, {2, 1, 0}}));
  CHECK_NOTHROW(Hypergraph(3, {{0, 1, 2}, {2, 1, 0}}, true));
  CHECK_THROWS(Hypergraph(4, {{0, 1, 2}, {0, 1}}));
}

}
