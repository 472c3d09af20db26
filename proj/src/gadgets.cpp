#include "hyperhom/gadgets.hpp"

#include <algorithm>
#include <stdexcept>

#include "hyperhom/multiset.hpp"

namespace hyperhom {

namespace {

std::vector<int> identity_map(int n) {
  std::vector<int> m(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) m[static_cast<std::size_t>(v)] = v;
  return m;
}

}  // namespace

GadgetResult pad_to_arity(const Hypergraph& G, int k, int r) {
  if (k < 2 || k > r) throw std::invalid_argument("padding needs 2 <= k <= r");
  if (G.edge_count() > 0 && G.uniformity() != k) throw std::invalid_argument("hypergraph is not k-uniform");
  int next = G.vertex_count();
  std::vector<Scope> edges;
  for (const auto& e : G.edges()) {
    Scope padded = e;
    for (int t = k; t < r; ++t) padded.push_back(next++);
    edges.push_back(std::move(padded));
  }
  GadgetResult out{Hypergraph(next, std::move(edges), G.has_parallel_edges(), r),
                   {identity_map(G.vertex_count())}, next - G.vertex_count(), {{"k", k}, {"r", r}}};
  return out;
}

GadgetResult two_stretch(const CspInstance& I) {
  I.validate();
  if (!I.scopes.empty() && I.arity() != 2) throw std::invalid_argument("2-stretch needs binary scopes");
  int next = I.n;
  std::vector<Scope> edges;
  for (const auto& s : I.scopes) {
    const int mid = next++;
    edges.push_back({s[0], mid});
    edges.push_back({s[1], mid});
  }
  return {Hypergraph(next, std::move(edges), true, 2), {identity_map(I.n)}, next - I.n, {}};
}

SymFunc gram(const SymFunc& h) {
  if (h.arity() != 2) throw std::invalid_argument("gram needs a binary function");
  const int q = h.domain_size();
  return SymFunc::tabulate(q, 2, [&](std::span<const int> xy) {
    Rational sum(0);
    for (int z = 0; z < q; ++z) sum += h.at({xy[0], z}) * h.at({xy[1], z});
    return sum;
  });
}

SymFunc tilde_f(const SymFunc& g, int k) {
  if (k < 2 || k > g.arity()) throw std::invalid_argument("tilde_f needs 2 <= k <= r");
  const SymFunc f = marginalize(g, k);
  const int q = g.domain_size();
  return SymFunc::tabulate(q, 2, [&](std::span<const int> xy) {
    Rational sum(0);
    std::vector<int> a(static_cast<std::size_t>(k)), b(static_cast<std::size_t>(k));
    a[0] = xy[0];
    b[0] = xy[1];
    for_each_tuple(q, k - 1, [&](std::span<const int> rest) {
      for (std::size_t t = 0; t < rest.size(); ++t) a[t + 1] = b[t + 1] = rest[t];
      sum += f.at(a) * f.at(b);
    });
    return sum;
  });
}

GadgetResult vertex_power(const Hypergraph& G, int j) {
  if (j < 1) throw std::invalid_argument("vertex power needs j >= 1");
  const int k = G.uniformity();
  const std::vector<int> deg = degrees(G);
  int next = G.vertex_count();
  std::vector<Scope> edges = G.edges();
  for (int v = 0; v < G.vertex_count(); ++v) {
    for (long e = 0; e < static_cast<long>(j - 1) * deg[static_cast<std::size_t>(v)]; ++e) {
      Scope pendant{v};
      for (int t = 1; t < k; ++t) pendant.push_back(next++);
      edges.push_back(std::move(pendant));
    }
  }
  return {Hypergraph(next, std::move(edges), G.has_parallel_edges(), k), {identity_map(G.vertex_count())},
          next - G.vertex_count(), {{"j", j}, {"k", k}}};
}

SymFunc power_weight(const SymFunc& f, int j) {
  if (j < 1) throw std::invalid_argument("power_weight needs j >= 1");
  const SymFunc U = marginalize(f, 1);
  return SymFunc::tabulate(f.domain_size(), f.arity(), [&](std::span<const int> z) {
    Rational w = f.at(z);
    for (int x : z) w *= U.at({x}).pow(static_cast<unsigned long>(j - 1));
    return w;
  });
}

GadgetResult component_separator(const Hypergraph& G, int p) {
  if (p < 1) throw std::invalid_argument("separator needs p >= 1");
  const int n = G.vertex_count();
  const int k = G.uniformity();
  if (k < 2) throw std::invalid_argument("separator needs k >= 2");
  std::vector<std::vector<int>> copies;
  std::vector<Scope> edges;
  for (int j = 0; j < p; ++j) {
    std::vector<int> ids;
    for (int v = 0; v < n; ++v) ids.push_back(j * n + v);
    for (const auto& e : G.edges()) {
      Scope c;
      for (int v : e) c.push_back(ids[static_cast<std::size_t>(v)]);
      edges.push_back(std::move(c));
    }
    copies.push_back(std::move(ids));
  }
  int next = p * n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) {
      Scope u;
      for (int t = 1; t < k; ++t) u.push_back(next++);
      Scope here = u, there = u;
      here.push_back(copies[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
      there.push_back(copies[static_cast<std::size_t>((j + 1) % p)][static_cast<std::size_t>(i)]);
      edges.push_back(std::move(here));
      edges.push_back(std::move(there));
    }
  }
  return {Hypergraph(next, std::move(edges), true, k), std::move(copies), next - p * n, {{"p", p}, {"k", k}}};
}

Rational separator_eta(const FactorStructure& fs, int group_order, const Hypergraph& G) {
  const long k = G.uniformity();
  const long n = G.vertex_count();
  if (k != fs.S.arity()) throw std::invalid_argument("separator eta needs k = r");
  const std::vector<int> deg = degrees(G);
  auto power_sum = [&](long d) {
    Rational s(0);
    for (const auto& m : fs.mu) s += m.pow(static_cast<unsigned long>(d));
    return s;
  };
  Rational eta = fs.C.pow(static_cast<unsigned long>(static_cast<long>(G.edge_count()) + 2 * n));
  for (int d : deg) eta *= power_sum(d + 2);
  eta *= power_sum(2).pow(static_cast<unsigned long>(n * (k - 1)));
  eta *= Rational(pow(BigInt(group_order), static_cast<unsigned long>(n * (k - 2))));
  return eta;
}

GadgetResult equality_eliminator(const CspInstance& I, int p) {
  I.validate();
  if (p < 1) throw std::invalid_argument("equality eliminator needs p >= 1");
  const int k = I.arity();
  if (k < 2) throw std::invalid_argument("equality eliminator needs scopes of arity >= 2");
  int next = I.n;
  std::vector<Scope> edges = I.scopes;
  for (const auto& [s, t] : I.equalities) {
    for (int j = 0; j < p; ++j) {
      Scope u;
      for (int x = 1; x < k; ++x) u.push_back(next++);
      Scope a = u, b = u;
      a.push_back(s);
      b.push_back(t);
      edges.push_back(std::move(a));
      edges.push_back(std::move(b));
    }
  }
  return {Hypergraph(next, std::move(edges), true, k), {identity_map(I.n)}, next - I.n,
          {{"p", p}, {"k", k}, {"equalities", static_cast<long>(I.equalities.size())}}};
}

InterpolationResult recover_via_interpolation(const InterpolationPlan& plan) {
  InterpolationResult out;
  for (const auto& e : plan.etas) {
    if (e.is_zero()) throw std::invalid_argument("interpolation needs nonzero etas");
    if (std::find(out.etas.begin(), out.etas.end(), e) == out.etas.end()) out.etas.push_back(e);
  }
  const std::size_t m = out.etas.size();
  if (plan.observations.size() < m) throw std::invalid_argument("fewer observations than distinct etas");
  // Rows p = 1..m of the Vandermonde system, eliminated exactly.
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1));
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t l = 0; l < m; ++l) a[p][l] = out.etas[l].pow(static_cast<unsigned long>(p + 1));
    a[p][m] = plan.observations[p];
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    while (piv < m && a[piv][c].is_zero()) ++piv;
    if (piv == m) throw std::logic_error("singular interpolation system");
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t x = c; x <= m; ++x) a[r][x] -= f * a[c][x];
    }
  }
  out.z0 = Rational(0);
  for (std::size_t l = 0; l < m; ++l) {
    out.gammas.push_back(a[l][m] / a[l][l]);
    out.z0 += out.gammas.back();
  }
  for (std::size_t p = m; p < plan.observations.size(); ++p) {
    Rational predicted(0);
    for (std::size_t l = 0; l < m; ++l) predicted += out.gammas[l] * out.etas[l].pow(static_cast<unsigned long>(p + 1));
    if (predicted != plan.observations[p]) throw std::invalid_argument("observation " + std::to_string(p + 1) + " is inconsistent with the etas");
  }
  return out;
}

}  // namespace hyperhom
