#include <doctest.h>

#include <numeric>
#include <random>

#include "hyperhom/dichotomy.hpp"
#include "hyperhom/evaluator.hpp"
#include "hyperhom/fixtures.hpp"
#include "oracles.hpp"

using namespace hyperhom;

namespace {

const FactorStructure& factors_of(const Classification& cls, std::size_t l = 0) {
  return cls.components.at(l).factors;
}

}  // namespace

TEST_SUITE("evaluator") {

TEST_CASE("eval_bruteforce examples") {
  const Hypergraph edge(3, {{0, 1, 2}});
  CHECK(eval_bruteforce(fixtures::all_ones(2), edge) == 8);
  CHECK(eval_bruteforce(fixtures::parity(), edge) == 4);
  CHECK(eval_bruteforce(fixtures::geometric(), edge) == 27);
  CHECK(eval_bruteforce(fixtures::parity(), CspInstance{2, {{0, 0, 1}}, {}}) == 2);
  CHECK(eval_bruteforce(fixtures::parity(), CspInstance{3, {{0, 1, 2}}, {{0, 1}}}) == 2);
  CHECK(eval_bruteforce(fixtures::parity(), Hypergraph(0, {}, false, 3)) == 1);
  CHECK_THROWS_AS(eval_bruteforce(fixtures::parity(), Hypergraph(30, {{0, 1, 2}})), CapExceeded);
  CHECK_NOTHROW(eval_bruteforce(fixtures::parity(), Hypergraph(30, {{0, 1, 2}}), std::uint64_t{1} << 31));
}

TEST_CASE("eval_bruteforce matches the odometer, including rational weights") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> num(0, 7), den(1, 5);
  for (int t = 0; t < 40; ++t) {
    const int q = 2 + t % 3;
    const SymFunc g = SymFunc::tabulate(q, 3, [&](std::span<const int>) { return Rational(BigInt(num(rng)), BigInt(den(rng))); });
    CspInstance I;
    I.n = 1 + t % 6;
    for (int e = 0; e < 1 + t % 4; ++e) {
      Scope s;
      for (int k = 0; k < 3; ++k) s.push_back(static_cast<int>(rng() % static_cast<unsigned>(I.n)));
      I.scopes.push_back(s);
    }
    if (t % 4 == 0 && I.n > 1) I.equalities.emplace_back(0, 1);
    CHECK(eval_bruteforce(g, I) == oracle::partition_function(g, I));
  }
}

TEST_CASE("big weights take the arbitrary precision path") {
  const SymFunc g = SymFunc::tabulate(2, 3, [](std::span<const int>) { return Rational(pow(BigInt(10), 30)); });
  const Hypergraph G(6, {{0, 1, 2}, {3, 4, 5}, {0, 3, 4}, {1, 2, 5}, {0, 2, 4}});
  CHECK(eval_bruteforce(g, G) == Rational(pow(BigInt(10), 150) * 64));
}

TEST_CASE("lambda_factor_direct examples") {
  const std::vector<int> ones{1, 1, 1};
  CHECK(lambda_factor_direct(factors_of(classify(fixtures::geometric())), ones, 1) == 27);
  CHECK(lambda_factor_direct(factors_of(classify(fixtures::parity())), std::vector<int>{2, 2, 1, 1}, 2) == 1);
  CHECK(lambda_factor_direct(factors_of(classify(fixtures::mixed())), ones, 1) == 64);
  CHECK_THROWS(lambda_factor_direct(factors_of(classify(fixtures::mixed())), ones, 2));
}

TEST_CASE("northwest_contingency examples") {
  const std::vector<long> a{2, 1}, b{3, 3}, c{4, 2};
  CHECK(northwest_contingency(a, 1, 3).cells == std::vector<std::vector<long>>{{2}, {1}});
  CHECK(northwest_contingency(b, 2, 3).cells == std::vector<std::vector<long>>{{3, 0}, {0, 3}});
  CHECK(northwest_contingency(c, 2, 3).cells == std::vector<std::vector<long>>{{3, 1}, {0, 2}});
  CHECK_THROWS(northwest_contingency(c, 3, 3));
}

TEST_CASE("monomial_value examples") {
  const SymFunc geo = fixtures::geometric();
  const Classification gcls = classify(geo);
  const auto& gfs = factors_of(gcls);
  CHECK(monomial_value(geo, gfs, std::vector<long>{2, 1}) == 2);
  CHECK(monomial_value(geo, gfs, std::vector<long>{3, 0}) == 1);
  const SymFunc mix = fixtures::mixed();
  const Classification cls = classify(mix);
  CHECK(monomial_value(mix, factors_of(cls), std::vector<long>{0, 3}) == 27);
  // Same value for every member of S.
  for (const auto& alpha : factors_of(cls).S.members()) {
    CHECK(monomial_value(mix, factors_of(cls), std::vector<long>{4, 2}, alpha) ==
          monomial_value(mix, factors_of(cls), std::vector<long>{4, 2}));
  }
}

TEST_CASE("lambda_monomial_dp examples") {
  const SymFunc geo = fixtures::geometric();
  const std::vector<int> ones{1, 1, 1};
  const LambdaDp dp = lambda_monomial_dp(geo, factors_of(classify(geo)), ones, 1);
  const std::map<std::vector<long>, BigInt> expect{{{3, 0}, 1}, {{2, 1}, 3}, {{1, 2}, 3}, {{0, 3}, 1}};
  CHECK(dp.tally.coeff == expect);
  CHECK(dp.value == 27);

  const SymFunc par = fixtures::parity();
  const LambdaDp one = lambda_monomial_dp(par, factors_of(classify(par)), std::vector<int>{2, 2, 1, 1}, 2);
  CHECK(one.tally.coeff.size() == 1);
  CHECK(one.tally.coeff.begin()->second == 1);
  CHECK(one.value == 1);

  const SymFunc mix = fixtures::mixed();
  const std::vector<int> deg{1, 1, 2, 1, 1};
  CHECK(lambda_monomial_dp(mix, factors_of(classify(mix)), deg, 2).value == 2560);
  CHECK_THROWS(lambda_monomial_dp(mix, factors_of(classify(mix)), std::vector<int>{0, 0}, 0));
}

TEST_CASE("tally sanity and direct agreement") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 30; ++t) {
    const int s = 1 + t % 3;
    std::vector<Rational> lambda;
    for (int i = 0; i < s; ++i) lambda.emplace_back(BigInt(1 + static_cast<int>(rng() % 5)), BigInt(1 + static_cast<int>(rng() % 3)));
    const std::vector<int> moduli{2};
    const SymFunc g = fixtures::constructed(moduli, 3, lambda, 0);
    const Classification cls = classify(g);
    REQUIRE(cls.tractable());
    const Hypergraph G = oracle::random_hypergraph(rng, 6, 1 + t % 5, 3);
    const std::vector<int> deg = degrees(G);
    const auto M = static_cast<long>(G.edge_count());
    const LambdaDp dp = lambda_monomial_dp(g, factors_of(cls), deg, M);
    BigInt total = 0;
    for (const auto& [exps, c] : dp.tally.coeff) {
      CHECK(std::accumulate(exps.begin(), exps.end(), 0L) == 3 * M);
      total += c;
    }
    CHECK(total == pow(BigInt(factors_of(cls).s), static_cast<unsigned long>(G.vertex_count())));
    CHECK(dp.value == lambda_factor_direct(factors_of(cls), deg, M));
  }
}

TEST_CASE("eval_tractable examples") {
  const SymFunc par = fixtures::parity();
  const Classification pc = classify(par);
  EvalReport rep = eval_tractable(pc, par, Hypergraph(3, {{0, 1, 2}}));
  CHECK(rep.value == 4);
  CHECK(rep.pieces.size() == 1);
  CHECK(rep.pieces[0].terms[0].lambda == 1);
  CHECK(rep.pieces[0].terms[0].homs == 4);
  CHECK(eval_tractable(pc, par, Hypergraph(4, {{0, 1, 2}})).value == 8);
  CHECK(eval_tractable(pc, par, CspInstance{2, {{0, 0, 1}}, {}}).value == 2);
  CHECK(eval_tractable(pc, par, CspInstance{3, {{0, 1, 2}}, {{0, 1}}}).value == 2);

  const SymFunc mix = fixtures::mixed();
  const Classification mc = classify(mix);
  rep = eval_tractable(mc, mix, Hypergraph(3, {{0, 1, 2}}));
  CHECK(rep.value == 256);
  CHECK(rep.pieces[0].terms[0].lambda == 64);
  CHECK(rep.pieces[0].terms[0].homs == 4);
  CHECK(eval_tractable(mc, mix, Hypergraph(3, {{0, 1, 2}}), EvalMethod::StructuredDp).value == 256);
  CHECK_THROWS(eval_tractable(classify(fixtures::not_all_zero()), fixtures::not_all_zero(), Hypergraph(3, {{0, 1, 2}})));
}

TEST_CASE("degenerate domains") {
  const SymFunc zero(3, 3);
  const Classification cls = classify(zero);
  CHECK(eval_tractable(cls, zero, Hypergraph(3, {{0, 1, 2}})).value == 0);
  CHECK(eval_tractable(cls, zero, Hypergraph(2, {}, false, 3)).value == 9);
  const SymFunc single = SymFunc(2, 3).with_weight(std::vector<int>{0, 0, 0}, Rational(BigInt(1), BigInt(2)));
  const Classification sc = classify(single);
  REQUIRE(sc.tractable());
  const Hypergraph G(5, {{0, 1, 2}, {1, 2, 3}});
  CHECK(eval_tractable(sc, single, G).value == eval_bruteforce(single, G));
}

TEST_CASE("structured equals brute force and is multiplicative") {
  std::mt19937_64 rng(47);
  const std::vector<SymFunc> fs{fixtures::parity(), fixtures::mixed(), fixtures::geometric(), fixtures::two_component()};
  for (int t = 0; t < 40; ++t) {
    const SymFunc& g = fs[static_cast<std::size_t>(t) % fs.size()];
    const Classification cls = classify(g);
    const Hypergraph a = oracle::random_hypergraph(rng, 5, 1 + t % 3, 3);
    const Hypergraph b = oracle::random_hypergraph(rng, 4, 1 + t % 2, 3);
    const Rational za = eval_tractable(cls, g, a).value;
    const Rational zb = eval_tractable(cls, g, b).value;
    CHECK(za == oracle::partition_function(g, a));
    const CspInstance u = disjoint_union(as_csp(a), as_csp(b));
    CHECK(eval_tractable(cls, g, u).value == za * zb);
    CHECK(eval_bruteforce(g, u) == za * zb);
    CHECK(eval_tractable(cls, g, u, EvalMethod::StructuredDp).value == za * zb);
  }
}

TEST_CASE("contract_equalities") {
  std::vector<int> map;
  const CspInstance J = contract_equalities(CspInstance{4, {{0, 1, 3}}, {{3, 1}, {2, 0}}}, &map);
  CHECK(J.n == 2);
  CHECK(map == std::vector<int>{0, 1, 0, 1});
  CHECK(J.scopes[0] == Scope{0, 1, 1});
}

}
