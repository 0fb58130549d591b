#pragma once

#include <functional>
#include <vector>

#include "sbm/poly.hpp"
#include "sbm/word.hpp"

namespace sbm {

struct OrbitTerm {
  Word representative;  // lexicographically least canonical rotation
  long long multiplicity = 0;
  int labels = 0;  // h; the Erdos-Renyi weight of the orbit is Z^h
};

struct MomentExpansion {
  int order = 0;  // 2p
  std::vector<OrbitTerm> terms;  // sorted by (labels, representative)
};

// All closed tree walks of length 2p, grouped into rotation orbits.
MomentExpansion enumerate_tree_walks(int p, int threads = 0);
MomentExpansion enumerate_tree_walks_serial(int p);

// The sub-expansion of orbits with irreducible representatives.
MomentExpansion irreducible_expansion(int p, int threads = 0);

// Streams every closed tree-walk word of length `len` once.
void for_each_tree_walk(int len, const std::function<void(const Word&)>& visit);

// Walk weight when the graph architecture is a random regular graph of
// degree Z: the root with c children contributes Z(Z-1)...(Z-c+1), every
// other vertex with c children contributes (Z-1)(Z-2)...(Z-c).
Poly regular_graph_weight(const Word& w);

// Scalar Erdos-Renyi moment polynomial: sum of multiplicity * Z^h.
Poly scalar_er_moment(const MomentExpansion& e);

}  // namespace sbm
