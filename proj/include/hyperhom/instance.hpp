#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace hyperhom {

using Scope = std::vector<int>;

/// k-uniform hypergraph on vertices 0..n-1. Edges are strictly increasing
/// tuples. Repeated edges are only present when built with `allow_parallel`
/// (gadget outputs); simple inputs reject them.
class Hypergraph {
public:
  Hypergraph() = default;
  /// Validates and canonicalizes (sorts) every edge. `uniformity` is needed
  /// only when `edges` is empty.
  Hypergraph(int n, std::vector<Scope> edges, bool allow_parallel = false, int uniformity = 0);

  [[nodiscard]] int vertex_count() const { return n_; }
  [[nodiscard]] int uniformity() const { return k_; }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] const std::vector<Scope>& edges() const { return edges_; }
  [[nodiscard]] bool has_parallel_edges() const;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

private:
  int n_ = 0;
  int k_ = 0;
  std::vector<Scope> edges_;
};

/// #CSP instance: scopes may repeat variables and may themselves repeat.
/// Equality pairs are honoured by evaluation and consumed by the gadgets.
struct CspInstance {
  int n = 0;
  std::vector<Scope> scopes;
  std::vector<std::pair<int, int>> equalities;

  /// Throws std::out_of_range on an index outside [0, n).
  void validate() const;
  [[nodiscard]] int arity() const { return scopes.empty() ? 0 : static_cast<int>(scopes.front().size()); }
};

/// Vertices as variables, edges as scopes.
CspInstance as_csp(const Hypergraph& G);

/// A connected piece of an instance, relabeled onto 0..n-1.
struct InstanceComponent {
  CspInstance instance;
  std::vector<int> vertices;  // local id -> original id
};

struct InstanceSplit {
  std::vector<InstanceComponent> components;
  std::size_t isolated = 0;  // variables in no scope and no equality
};

/// Connected components of the variable-scope incidence graph (equalities
/// also connect their endpoints). Components are ordered by least variable.
InstanceSplit instance_components(const CspInstance& I);
InstanceSplit instance_components(const Hypergraph& G);

/// Occurrence count of each variable, with multiplicity inside a scope.
std::vector<int> degrees(const CspInstance& I);
std::vector<int> degrees(const Hypergraph& G);

/// Disjoint union, second instance's variables shifted by a.n.
CspInstance disjoint_union(const CspInstance& a, const CspInstance& b);

}  // namespace hyperhom
