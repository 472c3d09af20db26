#include "hyperhom/instance.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace hyperhom {

Hypergraph::Hypergraph(int n, std::vector<Scope> edges, bool allow_parallel, int uniformity)
    : n_(n), k_(uniformity), edges_(std::move(edges)) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  if (!edges_.empty()) k_ = static_cast<int>(edges_.front().size());
  for (auto& e : edges_) {
    if (static_cast<int>(e.size()) != k_) throw std::invalid_argument("non-uniform edge sizes");
    std::sort(e.begin(), e.end());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0 || e[i] >= n) {
        throw std::out_of_range("edge vertex " + std::to_string(e[i]) + " out of range");
      }
      if (i > 0 && e[i] == e[i - 1]) throw std::invalid_argument("non-distinct edge vertices");
    }
  }
  if (!allow_parallel && has_parallel_edges()) throw std::invalid_argument("duplicate edge");
}

bool Hypergraph::has_parallel_edges() const {
  std::set<Scope> seen;
  for (const auto& e : edges_) {
    if (!seen.insert(e).second) return true;
  }
  return false;
}

void CspInstance::validate() const {
  if (n < 0) throw std::invalid_argument("negative variable count");
  auto check = [&](int v) {
    if (v < 0 || v >= n) throw std::out_of_range("variable " + std::to_string(v) + " out of range");
  };
  for (const auto& s : scopes) {
    if (s.size() != scopes.front().size()) throw std::invalid_argument("non-uniform scope sizes");
    for (int v : s) check(v);
  }
  for (const auto& [u, w] : equalities) {
    check(u);
    check(w);
  }
}

CspInstance as_csp(const Hypergraph& G) {
  return CspInstance{G.vertex_count(), G.edges(), {}};
}

InstanceSplit instance_components(const CspInstance& I) {
  I.validate();
  const auto n = static_cast<std::size_t>(I.n);
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  std::vector<bool> touched(n, false);
  for (const auto& s : I.scopes) {
    for (int v : s) {
      touched[static_cast<std::size_t>(v)] = true;
      unite(static_cast<std::size_t>(s.front()), static_cast<std::size_t>(v));
    }
  }
  for (const auto& [u, w] : I.equalities) {
    touched[static_cast<std::size_t>(u)] = touched[static_cast<std::size_t>(w)] = true;
    unite(static_cast<std::size_t>(u), static_cast<std::size_t>(w));
  }

  InstanceSplit split;
  std::vector<int> comp_of_root(n, -1);
  std::vector<int> local(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    if (!touched[v]) {
      ++split.isolated;
      continue;
    }
    const std::size_t root = find(v);
    if (comp_of_root[root] < 0) {
      comp_of_root[root] = static_cast<int>(split.components.size());
      split.components.emplace_back();
    }
    auto& comp = split.components[static_cast<std::size_t>(comp_of_root[root])];
    local[v] = static_cast<int>(comp.vertices.size());
    comp.vertices.push_back(static_cast<int>(v));
  }
  auto to_local = [&](int v) { return local[static_cast<std::size_t>(v)]; };
  auto owner = [&](int v) -> InstanceComponent& {
    return split.components[static_cast<std::size_t>(
        comp_of_root[find(static_cast<std::size_t>(v))])];
  };
  for (const auto& s : I.scopes) {
    Scope mapped;
    mapped.reserve(s.size());
    for (int v : s) mapped.push_back(to_local(v));
    owner(s.front()).instance.scopes.push_back(std::move(mapped));
  }
  for (const auto& [u, w] : I.equalities) {
    owner(u).instance.equalities.emplace_back(to_local(u), to_local(w));
  }
  for (auto& comp : split.components) comp.instance.n = static_cast<int>(comp.vertices.size());
  return split;
}

InstanceSplit instance_components(const Hypergraph& G) { return instance_components(as_csp(G)); }

std::vector<int> degrees(const CspInstance& I) {
  I.validate();
  std::vector<int> d(static_cast<std::size_t>(I.n), 0);
  for (const auto& s : I.scopes) {
    for (int v : s) ++d[static_cast<std::size_t>(v)];
  }
  return d;
}

std::vector<int> degrees(const Hypergraph& G) { return degrees(as_csp(G)); }

CspInstance disjoint_union(const CspInstance& a, const CspInstance& b) {
  CspInstance out = a;
  out.n = a.n + b.n;
  for (const auto& s : b.scopes) {
    Scope shifted;
    for (int v : s) shifted.push_back(v + a.n);
    out.scopes.push_back(std::move(shifted));
  }
  for (const auto& [u, w] : b.equalities) out.equalities.emplace_back(u + a.n, w + a.n);
  return out;
}

}  // namespace hyperhom
