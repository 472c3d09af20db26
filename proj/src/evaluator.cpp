#include "hyperhom/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "hyperhom/multiset.hpp"

namespace hyperhom {

namespace {

using u128 = unsigned __int128;

std::uint64_t saturating_power(std::uint64_t base, long exp) {
  std::uint64_t out = 1;
  for (long i = 0; i < exp; ++i) {
    if (base != 0 && out > UINT64_MAX / base) return UINT64_MAX;
    out *= base;
  }
  return out;
}

/// A constraint checked once its last variable (in search order) is assigned.
struct Check {
  std::vector<int> vars;
  bool equality = false;
};

/// Search order: each step takes the variable completing the most constraints,
/// then the one most tied to already placed variables.
std::vector<int> search_order(int n, const std::vector<Check>& checks, const std::vector<bool>& active) {
  std::vector<std::vector<int>> touching(static_cast<std::size_t>(n));
  for (std::size_t c = 0; c < checks.size(); ++c) {
    for (int v : checks[c].vars) touching[static_cast<std::size_t>(v)].push_back(static_cast<int>(c));
  }
  std::vector<int> remaining(checks.size());
  for (std::size_t c = 0; c < checks.size(); ++c) {
    std::vector<int> distinct = checks[c].vars;
    std::sort(distinct.begin(), distinct.end());
    remaining[c] = static_cast<int>(std::unique(distinct.begin(), distinct.end()) - distinct.begin());
  }
  std::vector<bool> placed(static_cast<std::size_t>(n), false);
  std::vector<int> order;
  const long total = std::count(active.begin(), active.end(), true);
  while (static_cast<long>(order.size()) < total) {
    int best = -1;
    std::pair<int, int> best_score{-1, -1};
    for (int v = 0; v < n; ++v) {
      if (!active[static_cast<std::size_t>(v)] || placed[static_cast<std::size_t>(v)]) continue;
      std::pair<int, int> score{0, 0};
      std::vector<int> seen;
      for (int c : touching[static_cast<std::size_t>(v)]) {
        if (std::find(seen.begin(), seen.end(), c) != seen.end()) continue;
        seen.push_back(c);
        if (remaining[static_cast<std::size_t>(c)] == 1) ++score.first;
        if (static_cast<std::size_t>(remaining[static_cast<std::size_t>(c)]) <
            checks[static_cast<std::size_t>(c)].vars.size()) {
          ++score.second;
        }
      }
      if (score > best_score) {
        best_score = score;
        best = v;
      }
    }
    placed[static_cast<std::size_t>(best)] = true;
    order.push_back(best);
    std::vector<int> seen;
    for (int c : touching[static_cast<std::size_t>(best)]) {
      if (std::find(seen.begin(), seen.end(), c) != seen.end()) continue;
      seen.push_back(c);
      --remaining[static_cast<std::size_t>(c)];
    }
  }
  return order;
}

template <typename Int>
struct Search {
  int q = 0;
  int r = 0;
  const std::vector<Int>* table = nullptr;  // dense q^r table of scaled weights
  std::vector<int> order;
  std::vector<std::vector<const Check*>> due;  // checks completed at each depth
  std::vector<int> sigma;

  Int run(std::size_t depth) {
    if (depth == order.size()) return Int(1);
    const int v = order[depth];
    Int total(0);
    for (int x = 0; x < q; ++x) {
      sigma[static_cast<std::size_t>(v)] = x;
      Int weight(1);
      bool zero = false;
      for (const Check* c : due[depth]) {
        if (c->equality) {
          if (sigma[static_cast<std::size_t>(c->vars[0])] != sigma[static_cast<std::size_t>(c->vars[1])]) {
            zero = true;
            break;
          }
          continue;
        }
        std::size_t code = 0;
        for (auto it = c->vars.rbegin(); it != c->vars.rend(); ++it) {
          code = code * static_cast<std::size_t>(q) + static_cast<std::size_t>(sigma[static_cast<std::size_t>(*it)]);
        }
        const Int& w = (*table)[code];
        if (w == 0) {
          zero = true;
          break;
        }
        weight *= w;
      }
      if (zero) continue;
      const Int rest = run(depth + 1);
      if (rest != 0) total += weight * rest;
    }
    return total;
  }
};

BigInt to_big(u128 x) {
  BigInt hi(static_cast<unsigned long>(x >> 64));
  BigInt lo(static_cast<unsigned long>(x & UINT64_MAX));
  return (hi << 64) + lo;
}

}  // namespace

Rational eval_bruteforce(const SymFunc& g, const CspInstance& I, std::uint64_t cap) {
  I.validate();
  const int q = g.domain_size();
  const int r = g.arity();
  if (!I.scopes.empty() && I.arity() != r) throw std::invalid_argument("scope arity differs from the weight function");
  if (saturating_power(static_cast<std::uint64_t>(q), I.n) > cap) {
    throw CapExceeded("brute force refused: " + std::to_string(q) + "^" + std::to_string(I.n) +
                      " assignments exceed the cap of " + std::to_string(cap));
  }
  if (q == 0) return Rational(I.n == 0 ? 1 : 0);

  // Integer weights: g * L with L the lcm of all denominators.
  BigInt L = 1;
  g.for_each([&](std::span<const int>, const Rational& w) {
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), w.denominator().get_mpz_t());
  });
  const std::size_t cells = static_cast<std::size_t>(saturating_power(static_cast<std::uint64_t>(q), r));
  std::vector<BigInt> big(cells);
  BigInt max_weight = 0;
  for_each_tuple(q, r, [&](std::span<const int> t) {
    std::size_t code = 0;
    for (auto it = t.rbegin(); it != t.rend(); ++it) code = code * static_cast<std::size_t>(q) + static_cast<std::size_t>(*it);
    const Rational& w = g.at(t);
    big[code] = w.numerator() * (L / w.denominator());
    if (big[code] > max_weight) max_weight = big[code];
  });

  std::vector<Check> checks;
  std::vector<bool> active(static_cast<std::size_t>(I.n), false);
  for (const auto& s : I.scopes) {
    checks.push_back({s, false});
    for (int v : s) active[static_cast<std::size_t>(v)] = true;
  }
  for (const auto& [u, w] : I.equalities) {
    checks.push_back({{u, w}, true});
    active[static_cast<std::size_t>(u)] = active[static_cast<std::size_t>(w)] = true;
  }
  const long idle = std::count(active.begin(), active.end(), false);
  const std::vector<int> order = search_order(I.n, checks, active);
  std::vector<int> position(static_cast<std::size_t>(I.n), -1);
  for (std::size_t d = 0; d < order.size(); ++d) position[static_cast<std::size_t>(order[d])] = static_cast<int>(d);
  std::vector<std::vector<const Check*>> due(order.size());
  for (const auto& c : checks) {
    int last = 0;
    for (int v : c.vars) last = std::max(last, position[static_cast<std::size_t>(v)]);
    due[static_cast<std::size_t>(last)].push_back(&c);
  }

  BigInt total;
  // Fast path when q^n * maxW^M provably fits in 120 bits (log2 is approximate).
  const double bits = static_cast<double>(order.size()) * std::log2(static_cast<double>(q)) +
                      static_cast<double>(I.scopes.size()) *
                          std::log2(std::max(1.0, mpz_get_d(max_weight.get_mpz_t()))) + 1.0;
  if (bits < 120.0) {
    std::vector<u128> small(cells);
    for (std::size_t i = 0; i < cells; ++i) {
      u128 v = 0;
      mpz_export(&v, nullptr, -1, sizeof(u128), 0, 0, big[i].get_mpz_t());
      small[i] = v;
    }
    Search<u128> search{q, r, &small, order, due, std::vector<int>(static_cast<std::size_t>(I.n), 0)};
    total = to_big(search.run(0));
  } else {
    Search<BigInt> search{q, r, &big, order, due, std::vector<int>(static_cast<std::size_t>(I.n), 0)};
    total = search.run(0);
  }
  total *= pow(BigInt(q), static_cast<unsigned long>(idle));
  return Rational(total, pow(L, static_cast<unsigned long>(I.scopes.size())));
}

Rational eval_bruteforce(const SymFunc& g, const Hypergraph& G, std::uint64_t cap) {
  return eval_bruteforce(g, as_csp(G), cap);
}

Rational lambda_factor_direct(const FactorStructure& fs, std::span<const int> degrees, long edge_count) {
  const long r = fs.S.arity();
  const long sum = std::accumulate(degrees.begin(), degrees.end(), 0L);
  if (sum != r * edge_count) {
    throw std::invalid_argument("degree sum " + std::to_string(sum) + " differs from r*M = " +
                                std::to_string(r * edge_count));
  }
  std::map<int, long> multiplicity;
  for (int d : degrees) ++multiplicity[d];
  Rational out = fs.C.pow(static_cast<unsigned long>(edge_count));
  for (const auto& [d, count] : multiplicity) {
    Rational row(0);
    for (const auto& m : fs.mu) row += m.pow(static_cast<unsigned long>(d));
    out *= row.pow(static_cast<unsigned long>(count));
  }
  return out;
}

ContingencyTable northwest_contingency(std::span<const long> rows, long columns, long column_total) {
  const long sum = std::accumulate(rows.begin(), rows.end(), 0L);
  if (columns < 0 || column_total < 0 || sum != columns * column_total) {
    throw std::invalid_argument("row totals do not match columns * column total");
  }
  ContingencyTable t;
  t.cells.assign(rows.size(), std::vector<long>(static_cast<std::size_t>(columns), 0));
  std::vector<long> row_left(rows.begin(), rows.end());
  std::size_t i = 0;
  for (long j = 0; j < columns; ++j) {
    long col_left = column_total;
    while (col_left > 0) {
      while (row_left[i] == 0) ++i;
      const long take = std::min(row_left[i], col_left);
      t.cells[i][static_cast<std::size_t>(j)] += take;
      row_left[i] -= take;
      col_left -= take;
    }
  }
  return t;
}

Rational monomial_value(const SymFunc& g, const FactorStructure& fs, std::span<const long> exponents,
                        std::span<const int> alpha) {
  if (fs.S.empty()) throw std::invalid_argument("empty class relation");
  if (static_cast<int>(exponents.size()) != fs.s) throw std::invalid_argument("exponent vector length differs from s");
  const long r = g.arity();
  if (static_cast<long>(alpha.size()) != r || !fs.S.contains(alpha)) {
    throw std::invalid_argument("alpha is not a member of S");
  }
  const long total = std::accumulate(exponents.begin(), exponents.end(), 0L);
  if (total % r != 0) throw std::invalid_argument("exponent sum is not a multiple of r");
  const long columns = total / r;
  const ContingencyTable t = northwest_contingency(exponents, columns, r);
  Rational out(1);
  std::vector<int> previous;
  long run = 0;
  auto flush = [&] {
    if (run == 0) return;
    std::vector<int> tuple;
    for (long k = 0; k < r; ++k) tuple.push_back(fs.element(alpha[static_cast<std::size_t>(k)], previous[static_cast<std::size_t>(k)]));
    out *= g.at(tuple).pow(static_cast<unsigned long>(run));
  };
  for (long j = 0; j < columns; ++j) {
    std::vector<int> indices;
    for (std::size_t i = 0; i < t.cells.size(); ++i) {
      for (long c = 0; c < t.cells[i][static_cast<std::size_t>(j)]; ++c) indices.push_back(static_cast<int>(i));
    }
    if (indices == previous) {
      ++run;
    } else {
      flush();
      previous = std::move(indices);
      run = 1;
    }
  }
  flush();
  return out;
}

Rational monomial_value(const SymFunc& g, const FactorStructure& fs, std::span<const long> exponents) {
  return monomial_value(g, fs, exponents, fs.reference_member);
}

LambdaDp lambda_monomial_dp(const SymFunc& g, const FactorStructure& fs, std::span<const int> degrees,
                            long edge_count) {
  if (edge_count < 1) throw std::invalid_argument("lambda_monomial_dp needs at least one edge");
  const long r = g.arity();
  const long rM = r * edge_count;
  if (std::accumulate(degrees.begin(), degrees.end(), 0L) != rM) {
    throw std::invalid_argument("degree sum differs from r*M");
  }
  const int s = fs.s;
  // State: (M_1..M_{s-1}), each in [0, rM]; M_s is implied.
  const std::size_t side = static_cast<std::size_t>(rM + 1);
  std::size_t states = 1;
  std::vector<std::size_t> stride(static_cast<std::size_t>(s), 0);
  for (int i = 0; i + 1 < s; ++i) {
    stride[static_cast<std::size_t>(i)] = states;
    if (states > (std::size_t{1} << 26) / side) throw std::invalid_argument("monomial DP state space too large");
    states *= side;
  }
  std::vector<BigInt> cur(states), next(states);
  cur[0] = 1;
  std::vector<long> coord(static_cast<std::size_t>(s > 1 ? s - 1 : 0), 0);
  long reached = 0;
  for (int d : degrees) {
    for (auto& x : next) x = 0;
    for (std::size_t idx = 0; idx < states; ++idx) {
      if (sgn(cur[idx]) == 0) continue;
      // decode to check the bound for each coordinate
      std::size_t rest = idx;
      for (int i = 0; i + 1 < s; ++i) {
        coord[static_cast<std::size_t>(i)] = static_cast<long>(rest % side);
        rest /= side;
      }
      for (int i = 0; i + 1 < s; ++i) {
        if (coord[static_cast<std::size_t>(i)] + d <= rM) next[idx + stride[static_cast<std::size_t>(i)] * static_cast<std::size_t>(d)] += cur[idx];
      }
      next[idx] += cur[idx];  // index s-1
    }
    std::swap(cur, next);
    reached += d;
  }

  LambdaDp out;
  out.tally.s = s;
  out.tally.rM = rM;
  out.value = Rational(0);
  std::vector<long> exps(static_cast<std::size_t>(s));
  for (std::size_t idx = 0; idx < states; ++idx) {
    if (sgn(cur[idx]) == 0) continue;
    std::size_t rest = idx;
    long used = 0;
    for (int i = 0; i + 1 < s; ++i) {
      exps[static_cast<std::size_t>(i)] = static_cast<long>(rest % side);
      used += exps[static_cast<std::size_t>(i)];
      rest /= side;
    }
    exps[static_cast<std::size_t>(s - 1)] = reached - used;
    out.value += Rational(cur[idx]) * monomial_value(g, fs, exps);
    out.tally.coeff.emplace(exps, cur[idx]);
  }
  return out;
}

std::string to_string(EvalMethod m) {
  switch (m) {
    case EvalMethod::Brute: return "brute";
    case EvalMethod::Structured: return "structured";
    case EvalMethod::StructuredDp: return "structured-dp";
  }
  return "?";
}

CspInstance contract_equalities(const CspInstance& I, std::vector<int>* mapping) {
  I.validate();
  std::vector<int> parent(static_cast<std::size_t>(I.n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& [u, w] : I.equalities) {
    const int a = find(u), b = find(w);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::vector<int> id(static_cast<std::size_t>(I.n), -1);
  CspInstance out;
  for (int v = 0; v < I.n; ++v) {
    const int root = find(v);
    if (id[static_cast<std::size_t>(root)] < 0) id[static_cast<std::size_t>(root)] = out.n++;
    id[static_cast<std::size_t>(v)] = id[static_cast<std::size_t>(root)];
  }
  for (const auto& s : I.scopes) {
    Scope mapped;
    for (int v : s) mapped.push_back(id[static_cast<std::size_t>(v)]);
    out.scopes.push_back(std::move(mapped));
  }
  if (mapping) *mapping = id;
  return out;
}

EvalReport eval_tractable(const Classification& cls, const SymFunc& g, const CspInstance& I, EvalMethod method) {
  if (!cls.tractable()) throw std::invalid_argument("eval_tractable needs a tractable classification");
  if (method == EvalMethod::Brute) throw std::invalid_argument("eval_tractable does not brute force");
  if (!I.scopes.empty() && I.arity() != g.arity()) throw std::invalid_argument("scope arity differs from the weight function");
  std::vector<int> mapping;
  const CspInstance J = contract_equalities(I, &mapping);
  const InstanceSplit split = instance_components(J);
  std::vector<int> first_original(static_cast<std::size_t>(J.n), -1);
  for (int v = I.n - 1; v >= 0; --v) first_original[static_cast<std::size_t>(mapping[static_cast<std::size_t>(v)])] = v;

  EvalReport report;
  report.method = method;
  report.isolated = split.isolated;
  report.value = Rational(pow(BigInt(g.domain_size()), static_cast<unsigned long>(split.isolated)));
  for (const auto& piece : split.components) {
    InstancePiece out;
    out.edges = static_cast<long>(piece.instance.scopes.size());
    for (int v : piece.vertices) out.vertices.push_back(first_original[static_cast<std::size_t>(v)]);
    const std::vector<int> deg = degrees(piece.instance);
    out.value = Rational(0);
    for (std::size_t l = 0; l < cls.components.size(); ++l) {
      const auto& comp = cls.components[l];
      ComponentTerm term;
      term.domain_component = static_cast<int>(l);
      term.homs = count_homs(comp.group.decomposition, comp.group.a, piece.instance);
      if (method == EvalMethod::StructuredDp) {
        term.lambda = lambda_monomial_dp(g, comp.factors, deg, out.edges).value;
      } else {
        term.lambda = lambda_factor_direct(comp.factors, deg, out.edges);
      }
      out.value += term.lambda * Rational(term.homs);
      out.terms.push_back(std::move(term));
    }
    report.value *= out.value;
    report.pieces.push_back(std::move(out));
  }
  return report;
}

EvalReport eval_tractable(const Classification& cls, const SymFunc& g, const Hypergraph& G, EvalMethod method) {
  return eval_tractable(cls, g, as_csp(G), method);
}

}  // namespace hyperhom
