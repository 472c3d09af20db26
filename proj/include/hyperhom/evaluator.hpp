#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperhom/dichotomy.hpp"
#include "hyperhom/instance.hpp"
#include "hyperhom/rational.hpp"
#include "hyperhom/symfunc.hpp"

namespace hyperhom {

inline constexpr std::uint64_t kDefaultBruteCap = 10'000'000;

/// Thrown when q^n exceeds the brute-force guard.
class CapExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Exact Z^g by summing over every assignment. Equalities are honoured.
/// Refuses (CapExceeded) when q^n > cap.
Rational eval_bruteforce(const SymFunc& g, const CspInstance& I, std::uint64_t cap = kDefaultBruteCap);
Rational eval_bruteforce(const SymFunc& g, const Hypergraph& G, std::uint64_t cap = kDefaultBruteCap);

/// C^M * prod_v sum_i mu[i]^{d_v}.
Rational lambda_factor_direct(const FactorStructure& fs, std::span<const int> degrees, long edge_count);

struct MonomialTally {
  int s = 0;
  long rM = 0;
  std::map<std::vector<long>, BigInt> coeff;  // exponent vector (M_1..M_s) -> count
};

struct ContingencyTable {
  std::vector<std::vector<long>> cells;  // s rows, M columns
};

/// Row sums `rows`, `columns` columns each summing to `column_total`, filled northwest-corner.
ContingencyTable northwest_contingency(std::span<const long> rows, long columns, long column_total);

/// prod_i lambda_i^{M_i} as a product of weights of g along alpha (default: the reference member of S).
Rational monomial_value(const SymFunc& g, const FactorStructure& fs, std::span<const long> exponents);
Rational monomial_value(const SymFunc& g, const FactorStructure& fs, std::span<const long> exponents,
                        std::span<const int> alpha);

struct LambdaDp {
  MonomialTally tally;
  Rational value;
};

/// Lambda by dynamic programming over exponent vectors; needs edge_count >= 1.
LambdaDp lambda_monomial_dp(const SymFunc& g, const FactorStructure& fs, std::span<const int> degrees,
                            long edge_count);

enum class EvalMethod { Brute, Structured, StructuredDp };

std::string to_string(EvalMethod m);

struct ComponentTerm {
  int domain_component = 0;
  Rational lambda;
  BigInt homs;
};

struct InstancePiece {
  std::vector<int> vertices;  // original variable ids after equality contraction
  long edges = 0;
  std::vector<ComponentTerm> terms;
  Rational value;
};

struct EvalReport {
  Rational value;
  EvalMethod method = EvalMethod::Structured;
  std::vector<InstancePiece> pieces;
  std::size_t isolated = 0;
};

/// Polynomial-time evaluation for a tractable g. `method` is Structured or StructuredDp.
EvalReport eval_tractable(const Classification& cls, const SymFunc& g, const CspInstance& I,
                          EvalMethod method = EvalMethod::Structured);
EvalReport eval_tractable(const Classification& cls, const SymFunc& g, const Hypergraph& G,
                          EvalMethod method = EvalMethod::Structured);

/// Variables merged along equality pairs; returns the contracted instance and old -> new ids.
CspInstance contract_equalities(const CspInstance& I, std::vector<int>* mapping = nullptr);

}  // namespace hyperhom
