#include "hyperhom/fixtures.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace hyperhom::fixtures {

SymFunc all_ones(int q, int r) {
  return SymFunc::tabulate(q, r, [](std::span<const int>) { return Rational(1); });
}

SymFunc parity(int r) { return sum_relation(2, r, 0); }

SymFunc geometric() {
  return SymFunc::tabulate(2, 3, [](std::span<const int> z) {
    long w = 1;
    for (int x : z) w *= x == 1 ? 2 : 1;
    return Rational(w);
  });
}

SymFunc mixed() {
  return SymFunc::tabulate(4, 3, [](std::span<const int> z) {
    int alpha = 0;
    long w = 1;
    for (int x : z) {
      alpha += x / 2;
      if (x % 2 == 1) w *= 3;
    }
    return Rational(alpha % 2 == 0 ? w : 0);
  });
}

SymFunc not_all_zero() {
  return SymFunc::tabulate(2, 3, [](std::span<const int> z) {
    return Rational(std::all_of(z.begin(), z.end(), [](int x) { return x == 0; }) ? 0 : 1);
  });
}

SymFunc steiner7() {
  static constexpr std::array<std::array<int, 3>, 7> blocks{
      {{0, 1, 3}, {1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {0, 4, 5}, {1, 5, 6}, {0, 2, 6}}};
  return SymFunc::tabulate(7, 3, [](std::span<const int> z) {
    if (z[0] == z[1] && z[1] == z[2]) return Rational(1);
    for (const auto& b : blocks) {
      if (std::equal(z.begin(), z.end(), b.begin())) return Rational(1);
    }
    return Rational(0);
  });
}

SymFunc latin_not_equational() {
  static constexpr std::array<std::array<int, 4>, 9> members{{{0, 0, 0, 1},
                                                              {0, 0, 2, 3},
                                                              {0, 1, 1, 1},
                                                              {0, 1, 2, 2},
                                                              {0, 1, 3, 3},
                                                              {1, 1, 2, 3},
                                                              {2, 2, 2, 2},
                                                              {2, 2, 3, 3},
                                                              {3, 3, 3, 3}}};
  return SymFunc::tabulate(4, 4, [](std::span<const int> z) {
    for (const auto& m : members) {
      if (std::equal(z.begin(), z.end(), m.begin())) return Rational(1);
    }
    return Rational(0);
  });
}

SymFunc sum_relation(int m, int r, int target) {
  return SymFunc::tabulate(m, r, [=](std::span<const int> z) {
    int sum = 0;
    for (int x : z) sum += x;
    return Rational(sum % m == target % m ? 1 : 0);
  });
}

SymFunc two_component() { return direct_sum(parity(3), all_ones(2, 3)); }

SymFunc indicator(const SymRelation& S) {
  return SymFunc::tabulate(S.size(), S.arity(),
                           [&](std::span<const int> z) { return Rational(S.contains(z) ? 1 : 0); });
}

SymFunc direct_sum(const SymFunc& a, const SymFunc& b) {
  if (a.arity() != b.arity()) throw std::invalid_argument("direct_sum needs equal arities");
  const int qa = a.domain_size();
  return SymFunc::tabulate(qa + b.domain_size(), a.arity(), [&](std::span<const int> z) {
    if (z.back() < qa) return a.at(z);
    if (z.front() >= qa) {
      std::vector<int> shifted(z.begin(), z.end());
      for (auto& x : shifted) x -= qa;
      return b.at(shifted);
    }
    return Rational(0);
  });
}

SymFunc constructed(std::span<const int> moduli, int r, std::span<const Rational> lambda, int target,
                    std::span<const int> labels) {
  const AbelianGroup G = AbelianGroup::product(moduli);
  const int s = static_cast<int>(lambda.size());
  const int q = G.order() * s;
  std::vector<int> label(static_cast<std::size_t>(q));
  for (int z = 0; z < q; ++z) label[static_cast<std::size_t>(z)] = z;
  if (!labels.empty()) {
    if (static_cast<int>(labels.size()) != q) throw std::invalid_argument("labeling has the wrong size");
    label.assign(labels.begin(), labels.end());
  }
  std::vector<int> unlabel(static_cast<std::size_t>(q), -1);
  for (int z = 0; z < q; ++z) unlabel[static_cast<std::size_t>(label[static_cast<std::size_t>(z)])] = z;
  if (std::find(unlabel.begin(), unlabel.end(), -1) != unlabel.end()) {
    throw std::invalid_argument("labeling is not a permutation");
  }
  return SymFunc::tabulate(q, r, [&](std::span<const int> z) {
    int sum = G.zero();
    Rational w(1);
    for (int x : z) {
      const int e = unlabel[static_cast<std::size_t>(x)];
      sum = G.add(sum, e / s);
      w *= lambda[static_cast<std::size_t>(e % s)];
    }
    return sum == target ? w : Rational(0);
  });
}

}  // namespace hyperhom::fixtures
