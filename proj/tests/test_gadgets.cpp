#include <doctest.h>

#include <random>

#include "hyperhom/dichotomy.hpp"
#include "hyperhom/evaluator.hpp"
#include "hyperhom/fixtures.hpp"
#include "hyperhom/gadgets.hpp"
#include "oracles.hpp"

using namespace hyperhom;

TEST_SUITE("gadgets") {

TEST_CASE("pad_to_arity") {
  const Hypergraph G(2, {{0, 1}});
  const GadgetResult p = pad_to_arity(G, 2, 3);
  CHECK(p.instance.vertex_count() == 3);
  CHECK(p.instance.edges() == std::vector<Scope>{{0, 1, 2}});
  const Hypergraph E(3, {{0, 1, 2}});
  CHECK(pad_to_arity(E, 3, 3).instance == E);
  const Hypergraph triangle(3, {{0, 1}, {1, 2}, {0, 2}});
  const Hypergraph padded = pad_to_arity(triangle, 2, 3).instance;
  CHECK(eval_bruteforce(fixtures::parity(), padded) == 8);
  CHECK(eval_bruteforce(marginalize(fixtures::parity(), 2), triangle) == 8);
  CHECK_THROWS(pad_to_arity(G, 3, 3));
}

TEST_CASE("two_stretch and gram") {
  const CspInstance triangle{3, {{0, 1}, {1, 2}, {0, 2}}, {}};
  const GadgetResult s = two_stretch(triangle);
  CHECK(s.instance.vertex_count() == 6);
  CHECK(s.instance.edge_count() == 6);
  CHECK(degrees(s.instance) == std::vector<int>(6, 2));
  const GadgetResult e = two_stretch(CspInstance{2, {{0, 1}}, {}});
  CHECK(e.instance.vertex_count() == 3);
  CHECK(e.instance.edges() == std::vector<Scope>{{0, 2}, {1, 2}});

  const SymFunc h = SymFunc::tabulate(2, 2, [](std::span<const int> z) { return Rational(z[0] == z[1] ? 1 : 2); });
  const SymFunc h2 = gram(h);
  CHECK(h2.at({0, 0}) == 5);
  CHECK(h2.at({0, 1}) == 4);
  CHECK(h2.at({1, 1}) == 5);

  // Loop and parallel scopes.
  const CspInstance loopy{3, {{0, 0}, {0, 1}, {0, 1}, {1, 2}}, {}};
  const GadgetResult l = two_stretch(loopy);
  CHECK(l.instance.has_parallel_edges());
  CHECK(eval_bruteforce(h, l.instance) == eval_bruteforce(h2, loopy));
}

TEST_CASE("tilde_f examples") {
  const SymFunc ones = tilde_f(fixtures::all_ones(2), 3);
  CHECK(ones.at({0, 0}) == 4);
  CHECK(ones.at({0, 1}) == 4);
  const SymFunc par = tilde_f(fixtures::parity(), 3);
  CHECK(par.at({0, 0}) == 2);
  CHECK(par.at({0, 1}) == 0);
  CHECK(par.at({1, 1}) == 2);
  const SymFunc geo = tilde_f(fixtures::geometric(), 3);
  CHECK(geo.at({0, 0}) == 25);
  CHECK(geo.at({0, 1}) == 50);
  CHECK(geo.at({1, 1}) == 100);
}

TEST_CASE("vertex_power") {
  const Hypergraph E(3, {{0, 1, 2}});
  CHECK(vertex_power(E, 1).instance == E);
  const GadgetResult p = vertex_power(E, 2);
  CHECK(p.instance.vertex_count() == 9);
  CHECK(p.instance.edge_count() == 4);
  const SymFunc g = fixtures::geometric();
  CHECK(eval_bruteforce(g, p.instance) == eval_bruteforce(power_weight(g, 2), E));
  CHECK(power_weight(g, 1) == g);
}

TEST_CASE("component_separator counts") {
  const Hypergraph E(3, {{0, 1, 2}});
  GadgetResult s = component_separator(E, 1);
  CHECK(s.instance.vertex_count() == 9);
  CHECK(s.instance.edge_count() == 7);
  s = component_separator(E, 2);
  CHECK(s.instance.vertex_count() == 18);
  CHECK(s.instance.edge_count() == 14);
  CHECK(s.copies.size() == 2);
  CHECK(s.copies[1][0] == 3);
}

TEST_CASE("separator eta predicts the gadget value") {
  const SymFunc g = fixtures::two_component();
  const Classification cls = classify(g);
  REQUIRE(cls.components.size() == 2);
  const Hypergraph G(3, {{0, 1, 2}});
  const GadgetResult s = component_separator(G, 1);
  Rational predicted(0);
  for (const auto& c : cls.components) {
    predicted += Rational(count_homs(c.group.decomposition, c.group.a, G)) *
                 separator_eta(c.factors, c.group.group.order(), G);
  }
  CHECK(eval_bruteforce(g, s.instance) == predicted);
}

TEST_CASE("equality_eliminator") {
  const CspInstance I{3, {{0, 1, 2}}, {{0, 1}}};
  CHECK(equality_eliminator(CspInstance{3, {{0, 1, 2}}, {}}, 2).instance == Hypergraph(3, {{0, 1, 2}}));
  const GadgetResult e = equality_eliminator(I, 1);
  CHECK(e.instance.vertex_count() == 5);
  CHECK(e.instance.edge_count() == 3);
  const SymFunc par = fixtures::parity();
  CHECK(eval_bruteforce(par, I) == 2);
  for (int p = 1; p <= 3; ++p) {
    const GadgetResult ep = equality_eliminator(I, p);
    CHECK(eval_bruteforce(par, ep.instance) == Rational(2) * Rational(2).pow(static_cast<unsigned long>(p)));
  }
}

TEST_CASE("recover_via_interpolation examples") {
  InterpolationResult r = recover_via_interpolation({{1, 2}, {3, 5}});
  CHECK(r.gammas == std::vector<Rational>{1, 1});
  CHECK(r.z0 == 2);
  r = recover_via_interpolation({{3}, {6}});
  CHECK(r.gammas == std::vector<Rational>{2});
  r = recover_via_interpolation({{2, 2}, {4, 8}});
  CHECK(r.etas.size() == 1);
  CHECK(r.gammas == std::vector<Rational>{2});
  CHECK(r.z0 == 2);
  CHECK_THROWS(recover_via_interpolation({{2, 2}, {4, 9}}));
  CHECK_THROWS(recover_via_interpolation({{0}, {1}}));
  CHECK_THROWS(recover_via_interpolation({{1, 2}, {3}}));
}

TEST_CASE("interpolation recovers random gammas") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 20; ++t) {
    std::vector<Rational> etas, gammas;
    for (int l = 0; l < 1 + t % 4; ++l) {
      etas.emplace_back(BigInt(l + 1 + static_cast<int>(rng() % 3) * 5), BigInt(1 + static_cast<int>(rng() % 3)));
      gammas.emplace_back(static_cast<long>(rng() % 10));
    }
    std::vector<Rational> obs;
    for (std::size_t p = 1; p <= etas.size(); ++p) {
      Rational z(0);
      for (std::size_t l = 0; l < etas.size(); ++l) z += gammas[l] * etas[l].pow(p);
      obs.push_back(z);
    }
    const InterpolationResult r = recover_via_interpolation({etas, obs});
    Rational total(0);
    for (const auto& x : gammas) total += x;
    CHECK(r.z0 == total);
  }
}

}
