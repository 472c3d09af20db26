#include "hyperhom/dichotomy.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hyperhom/multiset.hpp"

namespace hyperhom {

namespace {

/// slice(z) = c * slice(y) over the component; returns c, or nothing if not proportional.
std::optional<Rational> slice_ratio(const SymFunc& g, std::span<const int> elements, int z, int y) {
  const int r = g.arity();
  std::optional<Rational> ratio;
  bool ok = true;
  std::vector<int> tz(static_cast<std::size_t>(r));
  std::vector<int> ty(static_cast<std::size_t>(r));
  for_each_multiset(static_cast<int>(elements.size()), r - 1, [&](std::span<const int> w) {
    if (!ok) return;
    tz[0] = z;
    ty[0] = y;
    for (std::size_t t = 0; t < w.size(); ++t) {
      tz[t + 1] = ty[t + 1] = elements[static_cast<std::size_t>(w[t])];
    }
    const Rational& a = g.at(tz);
    const Rational& b = g.at(ty);
    if (!ratio) {
      if (a.is_zero() && b.is_zero()) return;
      if (a.is_zero() || b.is_zero()) {
        ok = false;
        return;
      }
      ratio = a / b;
    } else if (a != *ratio * b) {
      ok = false;
    }
  });
  if (!ok) return std::nullopt;
  return ratio;
}

std::vector<int> map_ids(std::span<const int> ids, const std::vector<int>& table) {
  std::vector<int> out;
  out.reserve(ids.size());
  for (int x : ids) out.push_back(table[static_cast<std::size_t>(x)]);
  return out;
}

std::vector<int> class_tuple(const FactorStructure& fs, std::span<const int> alphas, int index) {
  std::vector<int> out;
  for (int a : alphas) out.push_back(fs.element(a, index));
  return out;
}

/// Relation-level witness -> element-level witness using class representatives.
HardnessWitness lift(HardnessWitness w, const FactorStructure& fs) {
  w.component = fs.component;
  w.tuple = map_ids(w.tuple, fs.representative);
  for (auto& rel : w.related) rel = map_ids(rel, fs.representative);
  return w;
}

}  // namespace

std::string to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::UnequalClassSizes: return "UnequalClassSizes";
    case WitnessKind::RatioMultisetMismatch: return "RatioMultisetMismatch";
    case WitnessKind::FactoringIdentityViolation: return "FactoringIdentityViolation";
    case WitnessKind::NotLatin: return "NotLatin";
    case WitnessKind::NotAssociative: return "NotAssociative";
    case WitnessKind::EquationMismatch: return "EquationMismatch";
  }
  return "?";
}

std::string HardnessWitness::describe() const {
  auto tup = [](std::span<const int> t) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
    os << ')';
    return os.str();
  };
  std::ostringstream os;
  os << to_string(kind) << " in component " << component << " at " << tup(tuple);
  switch (kind) {
    case WitnessKind::UnequalClassSizes:
      os << ": class sizes " << related[0].size() << " and " << related[1].size();
      break;
    case WitnessKind::RatioMultisetMismatch:
      os << ": ratio multisets of classes " << tup(related[0]) << " and " << tup(related[1])
         << " differ";
      break;
    case WitnessKind::FactoringIdentityViolation:
      os << ": " << values[0] << " != " << values[1];
      break;
    case WitnessKind::NotLatin:
      os << ": " << related[0].size() << " completions " << tup(related[0]);
      break;
    case WitnessKind::NotAssociative:
      os << ": (a+b)+c = " << related[1][0] << ", a+(b+c) = " << related[1][1];
      break;
    case WitnessKind::EquationMismatch:
      os << ": expected completion " << related[0][0] << ", found " << tup(related[1]);
      break;
  }
  return os.str();
}

std::pair<int, int> FactorStructure::coordinates(int z) const {
  const auto it = coords.find(z);
  if (it == coords.end()) throw std::out_of_range("element not in component");
  return it->second;
}

std::vector<int> FactorStructure::elements() const {
  std::vector<int> out;
  for (const auto& [z, c] : coords) out.push_back(z);
  return out;
}

SimClasses sim_classes(const SymFunc& g, std::span<const int> component, int component_id) {
  SimClasses sc;
  sc.component = component_id;
  std::vector<int> elements(component.begin(), component.end());
  std::sort(elements.begin(), elements.end());
  for (int z : elements) {
    bool placed = false;
    for (std::size_t c = 0; c < sc.classes.size() && !placed; ++c) {
      if (auto ratio = slice_ratio(g, elements, z, sc.representative(c))) {
        if (ratio->sign() <= 0) continue;
        sc.classes[c].push_back(z);
        sc.ratios[c].push_back(*ratio);
        placed = true;
      }
    }
    if (!placed) {
      sc.classes.push_back({z});
      sc.ratios.push_back({Rational(1)});
    }
  }
  return sc;
}

std::variant<FactorStructure, HardnessWitness> check_product_structure(const SimClasses& sc,
                                                                       const SymFunc& g) {
  if (sc.classes.empty()) throw std::invalid_argument("empty component");
  const std::size_t s = sc.classes.front().size();
  for (std::size_t c = 1; c < sc.classes.size(); ++c) {
    if (sc.classes[c].size() != s) {
      HardnessWitness w{WitnessKind::UnequalClassSizes, sc.component,
                        {sc.representative(0), sc.representative(c)},
                        {sc.classes[0], sc.classes[c]}, {}};
      return w;
    }
  }

  FactorStructure fs;
  fs.component = sc.component;
  fs.s = static_cast<int>(s);
  std::vector<std::vector<Rational>> normalized(sc.classes.size());
  for (std::size_t c = 0; c < sc.classes.size(); ++c) {
    const auto& ratios = sc.ratios[c];
    const Rational least = *std::min_element(ratios.begin(), ratios.end());
    std::vector<std::size_t> order(s);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<Rational> norm;
    for (const auto& x : ratios) norm.push_back(x / least);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      if (norm[x] != norm[y]) return norm[x] < norm[y];
      return sc.classes[c][x] < sc.classes[c][y];
    });
    std::vector<int> ordered;
    for (std::size_t idx : order) {
      ordered.push_back(sc.classes[c][idx]);
      normalized[c].push_back(norm[idx]);
    }
    fs.classes.push_back(std::move(ordered));
    fs.representative.push_back(sc.representative(c));
  }
  for (std::size_t c = 1; c < sc.classes.size(); ++c) {
    if (normalized[c] != normalized[0]) {
      HardnessWitness w{WitnessKind::RatioMultisetMismatch, sc.component,
                        {sc.representative(0), sc.representative(c)},
                        {fs.classes[0], fs.classes[c]}, normalized[0]};
      w.values.insert(w.values.end(), normalized[c].begin(), normalized[c].end());
      return w;
    }
  }
  fs.mu = normalized[0];
  for (std::size_t a = 0; a < fs.classes.size(); ++a) {
    for (std::size_t i = 0; i < s; ++i) {
      fs.coords[fs.classes[a][i]] = {static_cast<int>(a), static_cast<int>(i)};
    }
  }
  fs.S = SymRelation(fs.class_count(), g.arity(), [&](std::span<const int> alphas) {
    return g.at(class_tuple(fs, alphas, 0)).sign() > 0;
  });
  const auto members = fs.S.members();
  if (members.empty()) throw std::logic_error("participating component with empty relation");
  fs.reference_member = members.front();
  fs.C = g.at(class_tuple(fs, fs.reference_member, 0));
  return fs;
}

std::optional<HardnessWitness> verify_factoring_identity(const SymFunc& g,
                                                         const FactorStructure& fs) {
  const int r = g.arity();
  std::vector<Rational> uniform;
  std::vector<std::vector<int>> uniform_tuples;
  for (int i = 0; i < fs.s; ++i) {
    uniform_tuples.push_back(class_tuple(fs, fs.reference_member, i));
    uniform.push_back(g.at(uniform_tuples.back()));
  }
  const std::vector<int> elements = fs.elements();
  std::optional<HardnessWitness> found;
  std::vector<int> z(static_cast<std::size_t>(r));
  std::vector<int> alphas(static_cast<std::size_t>(r));
  std::vector<int> idx(static_cast<std::size_t>(r));
  for_each_multiset(static_cast<int>(elements.size()), r, [&](std::span<const int> key) {
    if (found) return;
    for (std::size_t t = 0; t < key.size(); ++t) {
      z[t] = elements[static_cast<std::size_t>(key[t])];
      std::tie(alphas[t], idx[t]) = fs.coordinates(z[t]);
    }
    const Rational& value = g.at(z);
    if (!fs.S.contains(alphas)) {
      if (!value.is_zero()) {
        found = HardnessWitness{WitnessKind::FactoringIdentityViolation, fs.component, z, {},
                                {value, Rational(0)}};
      }
      return;
    }
    const Rational lhs = value.pow(static_cast<unsigned long>(r));
    Rational rhs(1);
    for (int i : idx) rhs *= uniform[static_cast<std::size_t>(i)];
    if (lhs != rhs) {
      HardnessWitness w{WitnessKind::FactoringIdentityViolation, fs.component, z, {}, {lhs, rhs}};
      for (int i : idx) w.related.push_back(uniform_tuples[static_cast<std::size_t>(i)]);
      found = std::move(w);
    }
  });
  return found;
}

std::vector<int> completions(const SymRelation& S, std::span<const int> prefix) {
  std::vector<int> out;
  std::vector<int> t(prefix.begin(), prefix.end());
  t.push_back(0);
  for (int c = 0; c < S.size(); ++c) {
    t.back() = c;
    if (S.contains(t)) out.push_back(c);
  }
  return out;
}

std::optional<HardnessWitness> latin_check(const SymRelation& S) {
  std::optional<HardnessWitness> found;
  for_each_multiset(S.size(), S.arity() - 1, [&](std::span<const int> prefix) {
    if (found) return;
    auto c = completions(S, prefix);
    if (c.size() != 1) {
      found = HardnessWitness{WitnessKind::NotLatin, 0, {prefix.begin(), prefix.end()},
                              {std::move(c)}, {}};
    }
  });
  return found;
}

std::variant<GroupStructure, HardnessWitness> reconstruct_group(const SymRelation& S, int zero) {
  const int n = S.size();
  const int r = S.arity();
  if (r < 3) throw std::invalid_argument("group reconstruction needs arity >= 3");
  if (zero < 0 || zero >= n) throw std::out_of_range("designated zero out of range");
  const auto un = static_cast<std::size_t>(n);
  std::vector<int> dot(un * un);
  std::vector<int> prefix(static_cast<std::size_t>(r - 1), zero);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      prefix[0] = x;
      prefix[1] = y;
      const auto c = completions(S, prefix);
      if (c.size() != 1) throw std::logic_error("reconstruct_group called on a non-Latin relation");
      dot[static_cast<std::size_t>(x * n + y)] = c.front();
    }
  }
  auto mul = [&](int x, int y) { return dot[static_cast<std::size_t>(x * n + y)]; };
  const int zero_sq = mul(zero, zero);
  std::vector<int> add(un * un);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) add[static_cast<std::size_t>(x * n + y)] = mul(zero, mul(x, y));
  }
  auto plus = [&](int x, int y) { return add[static_cast<std::size_t>(x * n + y)]; };
  for (int x = 0; x < n; ++x) {
    if (plus(zero, x) != x) throw std::logic_error("designated zero is not an identity");
    if (plus(x, mul(x, zero_sq)) != zero) throw std::logic_error("x.0^2 is not an inverse");
    for (int y = 0; y < n; ++y) {
      if (plus(x, y) != plus(y, x)) throw std::logic_error("reconstructed sum is not commutative");
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        const int left = plus(plus(x, y), z);
        const int right = plus(x, plus(y, z));
        if (left != right) {
          return HardnessWitness{WitnessKind::NotAssociative, 0, {x, y, z}, {{zero}, {left, right}}, {}};
        }
      }
    }
  }
  GroupStructure gs;
  gs.group = AbelianGroup(n, std::move(add), zero);
  gs.decomposition = decompose(gs.group);
  gs.a = zero_sq;
  gs.dot = std::move(dot);
  return gs;
}

std::optional<HardnessWitness> equation_check(const SymRelation& S, const GroupStructure& gs) {
  std::optional<HardnessWitness> found;
  const AbelianGroup& G = gs.group;
  for_each_multiset(S.size(), S.arity() - 1, [&](std::span<const int> prefix) {
    if (found) return;
    int sum = G.zero();
    for (int x : prefix) sum = G.add(sum, x);
    const int expected = G.sub(gs.a, sum);
    auto c = completions(S, prefix);
    if (c.size() != 1 || c.front() != expected) {
      found = HardnessWitness{WitnessKind::EquationMismatch, 0, {prefix.begin(), prefix.end()},
                              {{expected}, std::move(c)}, {}};
    }
  });
  return found;
}

Classification classify(const SymFunc& g) {
  if (g.arity() < 3) throw std::invalid_argument("classification needs arity r >= 3");
  Classification out;
  out.domain_size = g.domain_size();
  const std::vector<int> kept = participating_elements(g);
  for (int z = 0, j = 0; z < g.domain_size(); ++z) {
    if (j < static_cast<int>(kept.size()) && kept[static_cast<std::size_t>(j)] == z) {
      ++j;
    } else {
      out.removed.push_back(z);
    }
  }
  const auto comps = domain_components(g, kept);
  for (std::size_t l = 0; l < comps.size(); ++l) {
    const SimClasses sc = sim_classes(g, comps[l], static_cast<int>(l));
    auto product = check_product_structure(sc, g);
    if (auto* w = std::get_if<HardnessWitness>(&product)) {
      out.witness = std::move(*w);
      return out;
    }
    FactorStructure fs = std::get<FactorStructure>(std::move(product));
    if (auto w = verify_factoring_identity(g, fs)) {
      out.witness = std::move(*w);
      return out;
    }
    if (auto w = latin_check(fs.S)) {
      out.witness = lift(std::move(*w), fs);
      return out;
    }
    auto group = reconstruct_group(fs.S, 0);
    if (auto* w = std::get_if<HardnessWitness>(&group)) {
      out.witness = lift(std::move(*w), fs);
      return out;
    }
    GroupStructure gs = std::get<GroupStructure>(std::move(group));
    if (auto w = equation_check(fs.S, gs)) {
      out.witness = lift(std::move(*w), fs);
      return out;
    }
    out.components.push_back({std::move(fs), std::move(gs)});
  }
  return out;
}

namespace {

struct Rebuilt {
  SimClasses sc;
  std::optional<FactorStructure> fs;
};

std::optional<Rebuilt> rebuild(const SymFunc& g, int element) {
  const std::vector<int> kept = participating_elements(g);
  for (const auto& comp : domain_components(g, kept)) {
    if (std::find(comp.begin(), comp.end(), element) == comp.end()) continue;
    Rebuilt out{sim_classes(g, comp), std::nullopt};
    auto product = check_product_structure(out.sc, g);
    if (auto* fs = std::get_if<FactorStructure>(&product)) out.fs = std::move(*fs);
    return out;
  }
  return std::nullopt;
}

std::vector<int> class_of(const SimClasses& sc, int z) {
  for (const auto& c : sc.classes) {
    if (std::find(c.begin(), c.end(), z) != c.end()) return c;
  }
  return {};
}

std::vector<int> to_class_ids(const FactorStructure& fs, std::span<const int> elems) {
  std::vector<int> out;
  for (int z : elems) out.push_back(fs.coordinates(z).first);
  return out;
}

}  // namespace

bool replay_witness(const SymFunc& g, const HardnessWitness& w) {
  if (w.tuple.empty()) return false;
  const auto rb = rebuild(g, w.tuple.front());
  if (!rb) return false;
  const SimClasses& sc = rb->sc;
  const int r = g.arity();
  try {
    switch (w.kind) {
      case WitnessKind::UnequalClassSizes: {
        const auto a = class_of(sc, w.tuple[0]);
        const auto b = class_of(sc, w.tuple[1]);
        return a == w.related.at(0) && b == w.related.at(1) && a.size() != b.size();
      }
      case WitnessKind::RatioMultisetMismatch: {
        const auto& ca = w.related.at(0);
        const auto& cb = w.related.at(1);
        auto sa = class_of(sc, ca.front());
        auto sb = class_of(sc, cb.front());
        auto sorted_a = ca;
        auto sorted_b = cb;
        std::sort(sorted_a.begin(), sorted_a.end());
        std::sort(sorted_b.begin(), sorted_b.end());
        if (sa != sorted_a || sb != sorted_b) return false;
        std::vector<int> comp;
        for (const auto& c : sc.classes) comp.insert(comp.end(), c.begin(), c.end());
        std::sort(comp.begin(), comp.end());
        // Normalized ratio multiset of each class, straight from the slices.
        auto exact = [&](const std::vector<int>& cls) {
          std::vector<Rational> out;
          for (int z : cls) {
            auto ratio = slice_ratio(g, comp, z, cls.front());
            if (!ratio) return std::vector<Rational>{};
            out.push_back(*ratio);
          }
          const Rational least = *std::min_element(out.begin(), out.end());
          for (auto& x : out) x /= least;
          std::sort(out.begin(), out.end());
          return out;
        };
        const auto pa = exact(sorted_a);
        const auto pb = exact(sorted_b);
        std::vector<Rational> joined = pa;
        joined.insert(joined.end(), pb.begin(), pb.end());
        return !pa.empty() && pa != pb && joined == w.values;
      }
      case WitnessKind::FactoringIdentityViolation: {
        if (!rb->fs || static_cast<int>(w.tuple.size()) != r) return false;
        const FactorStructure& fs = *rb->fs;
        const Rational& value = g.at(w.tuple);
        const auto alphas = to_class_ids(fs, w.tuple);
        if (!fs.S.contains(alphas)) return !value.is_zero() && w.values.at(0) == value;
        if (static_cast<int>(w.related.size()) != r) return false;
        Rational rhs(1);
        for (int t = 0; t < r; ++t) {
          const int index = fs.coordinates(w.tuple[static_cast<std::size_t>(t)]).second;
          if (w.related[static_cast<std::size_t>(t)] != class_tuple(fs, fs.reference_member, index)) {
            return false;
          }
          rhs *= g.at(w.related[static_cast<std::size_t>(t)]);
        }
        const Rational lhs = value.pow(static_cast<unsigned long>(r));
        return lhs != rhs && w.values.at(0) == lhs && w.values.at(1) == rhs;
      }
      case WitnessKind::NotLatin: {
        if (!rb->fs) return false;
        const FactorStructure& fs = *rb->fs;
        auto got = completions(fs.S, to_class_ids(fs, w.tuple));
        return got.size() != 1 && got == to_class_ids(fs, w.related.at(0));
      }
      case WitnessKind::NotAssociative: {
        if (!rb->fs) return false;
        const FactorStructure& fs = *rb->fs;
        const int zero = fs.coordinates(w.related.at(0).at(0)).first;
        std::vector<int> prefix(static_cast<std::size_t>(r - 1), zero);
        auto dot = [&](int x, int y) {
          prefix[0] = x;
          prefix[1] = y;
          const auto c = completions(fs.S, prefix);
          if (c.size() != 1) throw std::logic_error("not Latin");
          return c.front();
        };
        auto plus = [&](int x, int y) { return dot(zero, dot(x, y)); };
        const auto abc = to_class_ids(fs, w.tuple);
        const int left = plus(plus(abc[0], abc[1]), abc[2]);
        const int right = plus(abc[0], plus(abc[1], abc[2]));
        return left != right && fs.coordinates(w.related.at(1).at(0)).first == left &&
               fs.coordinates(w.related.at(1).at(1)).first == right;
      }
      case WitnessKind::EquationMismatch: {
        if (!rb->fs) return false;
        const FactorStructure& fs = *rb->fs;
        auto group = reconstruct_group(fs.S, 0);
        const auto* gs = std::get_if<GroupStructure>(&group);
        if (!gs) return false;
        const auto prefix = to_class_ids(fs, w.tuple);
        int sum = gs->group.zero();
        for (int x : prefix) sum = gs->group.add(sum, x);
        const int expected = gs->group.sub(gs->a, sum);
        const auto got = completions(fs.S, prefix);
        const bool mismatch = got.size() != 1 || got.front() != expected;
        return mismatch && fs.coordinates(w.related.at(0).at(0)).first == expected &&
               got == to_class_ids(fs, w.related.at(1));
      }
    }
  } catch (const std::exception&) {
    return false;
  }
  return false;
}

}  // namespace hyperhom
