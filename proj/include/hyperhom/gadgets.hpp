#pragma once

#include <map>
#include <string>
#include <vector>

#include "hyperhom/dichotomy.hpp"
#include "hyperhom/instance.hpp"
#include "hyperhom/rational.hpp"
#include "hyperhom/symfunc.hpp"

namespace hyperhom {

struct GadgetResult {
  Hypergraph instance;
  // copies[j][v]: new id of original vertex v in copy j (a single copy unless the gadget replicates G)
  std::vector<std::vector<int>> copies;
  int fresh = 0;  // vertices added beyond the copies
  std::map<std::string, long> parameters;
};

/// Each edge gains r - k fresh vertices.
GadgetResult pad_to_arity(const Hypergraph& G, int k, int r);

/// Subdivides every 2-scope (loops allowed) by a fresh vertex. The result may have parallel edges.
GadgetResult two_stretch(const CspInstance& I);

/// h2(x, y) = sum_z h(x, z) h(y, z) for a binary h.
SymFunc gram(const SymFunc& h);

/// f~(z, z') = sum over z_2..z_k of f(z, z_2..z_k) f(z', z_2..z_k), with f = f^(k).
SymFunc tilde_f(const SymFunc& g, int k);

/// For every vertex v, (j-1) d_v pendant edges through v and k-1 fresh vertices.
GadgetResult vertex_power(const Hypergraph& G, int j);

/// h(z) = f(z) * prod_t U(z_t)^{j-1} with U the unary marginal of f, so that
/// Z^h(G) = Z^f(vertex_power(G, j)).
SymFunc power_weight(const SymFunc& f, int j);

/// p copies of G, and for each vertex i and copy j fresh u_1..u_{k-1} joined by
/// the edges (u, v_i^j) and (u, v_i^{(j mod p)+1}).
GadgetResult component_separator(const Hypergraph& G, int p);

/// eta for one component of a tractable g (arity k = r) on the separator of G:
/// Z^g(G^(p)) = sum_l Z^{S_l}(G) eta_l^p for connected G.
Rational separator_eta(const FactorStructure& fs, int group_order, const Hypergraph& G);

/// Replaces each equality (s, t) by p gadgets: fresh u_1..u_{k-1} with edges (u, s) and (u, t).
/// Scopes of I must be edges with distinct variables, of arity k >= 2.
GadgetResult equality_eliminator(const CspInstance& I, int p);

struct InterpolationPlan {
  std::vector<Rational> etas;          // nonzero, duplicates allowed
  std::vector<Rational> observations;  // Z_1..Z_m
};

struct InterpolationResult {
  std::vector<Rational> etas;    // distinct, first-occurrence order
  std::vector<Rational> gammas;  // merged coefficient of each distinct eta
  Rational z0;
};

/// Solves Z_p = sum_l gamma_l eta_l^p exactly after merging equal etas; extra
/// observations must be consistent.
InterpolationResult recover_via_interpolation(const InterpolationPlan& plan);

}  // namespace hyperhom
