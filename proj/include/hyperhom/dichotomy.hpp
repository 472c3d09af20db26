#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hyperhom/abelian.hpp"
#include "hyperhom/rational.hpp"
#include "hyperhom/relation.hpp"
#include "hyperhom/symfunc.hpp"

namespace hyperhom {

/// Exact proportionality classes of the r-ary slices inside one domain component.
struct SimClasses {
  int component = 0;
  std::vector<std::vector<int>> classes;     // ascending elements; classes[c][0] is the least
  std::vector<std::vector<Rational>> ratios; // ratios[c][t]: slice(classes[c][t]) / slice(classes[c][0])

  [[nodiscard]] int representative(std::size_t c) const { return classes[c].front(); }
};

/// A component written as A x [s] with g((a_1,i_1)..(a_r,i_r)) = C * prod mu[i_j] * S(a).
struct FactorStructure {
  int component = 0;
  std::vector<std::vector<int>> classes;  // classes[alpha][i]: element with index i
  std::vector<int> representative;        // least element of each class
  int s = 0;
  std::vector<Rational> mu;               // mu[0] = 1, non-decreasing
  Rational C;
  SymRelation S;                          // on class ids 0..|A|-1
  std::vector<int> reference_member;      // first member of S, lexicographic

  [[nodiscard]] int class_count() const { return static_cast<int>(classes.size()); }
  [[nodiscard]] int element(int alpha, int index) const {
    return classes[static_cast<std::size_t>(alpha)][static_cast<std::size_t>(index)];
  }
  /// (alpha, index) of a component element.
  [[nodiscard]] std::pair<int, int> coordinates(int z) const;
  /// Elements of the component, ascending.
  [[nodiscard]] std::vector<int> elements() const;

  std::map<int, std::pair<int, int>> coords;
};

enum class WitnessKind {
  UnequalClassSizes,
  RatioMultisetMismatch,
  FactoringIdentityViolation,
  NotLatin,
  NotAssociative,
  EquationMismatch,
};

std::string to_string(WitnessKind kind);

/// Evidence for the first violated tractability condition.
///
/// Field use per kind (ids are domain elements once produced by classify;
/// relation-level checks report relation elements):
///   UnequalClassSizes          tuple {z, z'}, related {class(z), class(z')}
///   RatioMultisetMismatch      tuple {z, z'}, related {class(z), class(z')} in index order,
///                              values = normalized ratios of both classes, concatenated
///   FactoringIdentityViolation tuple z (r elements); related = reference tuples whose
///                              product is the right-hand side (empty if z is off S);
///                              values {lhs, rhs}
///   NotLatin                   tuple = (r-1)-prefix, related {completions}
///   NotAssociative             tuple {a, b, c}, related {{zero}, {(a+b)+c, a+(b+c)}}
///   EquationMismatch           tuple = (r-1)-prefix, related {{expected}, completions}
struct HardnessWitness {
  WitnessKind kind{};
  int component = 0;
  std::vector<int> tuple;
  std::vector<std::vector<int>> related;
  std::vector<Rational> values;

  [[nodiscard]] std::string describe() const;
};

/// Abelian group recovered on the class set A, with S = {sum = a}.
struct GroupStructure {
  AbelianGroup group;
  CyclicDecomposition decomposition;
  int a = 0;
  std::vector<int> dot;  // the quasigroup x.y read off S, row-major
};

struct ComponentStructure {
  FactorStructure factors;
  GroupStructure group;
};

struct Classification {
  int domain_size = 0;
  std::vector<int> removed;  // non-participating elements
  std::vector<ComponentStructure> components;
  std::optional<HardnessWitness> witness;

  [[nodiscard]] bool tractable() const { return !witness.has_value(); }
};

SimClasses sim_classes(const SymFunc& g, std::span<const int> component, int component_id = 0);

std::variant<FactorStructure, HardnessWitness> check_product_structure(const SimClasses& sc,
                                                                       const SymFunc& g);

/// Root-free check of g(a, i)^r = prod_j g(b0, uniform i_j) over every tuple of
/// the component, with b0 the reference member of S; tuples off S must weigh 0.
std::optional<HardnessWitness> verify_factoring_identity(const SymFunc& g,
                                                         const FactorStructure& fs);

/// Elements c with prefix + (c) in S.
std::vector<int> completions(const SymRelation& S, std::span<const int> prefix);

std::optional<HardnessWitness> latin_check(const SymRelation& S);

/// Builds x.y from padded triples (x, y, x.y, zero, ..., zero) and the group
/// x + y = zero.(x.y). `S` must be Latin.
std::variant<GroupStructure, HardnessWitness> reconstruct_group(const SymRelation& S, int zero = 0);

std::optional<HardnessWitness> equation_check(const SymRelation& S, const GroupStructure& gs);

/// Full pipeline on every component; the first failure wins.
Classification classify(const SymFunc& g);

/// Re-derives the stated failure from g alone.
bool replay_witness(const SymFunc& g, const HardnessWitness& w);

}  // namespace hyperhom
