#pragma once

#include <map>
#include <string>
#include <vector>

#include "cbglue/lattice.hpp"
#include "cbglue/quiver.hpp"

namespace cbglue {

// Maximal torus of prod_i GL(n_i) with one coordinate block per vertex, in
// vertex declaration order. Vertices of dimension 0 keep an empty block so
// block indices stay aligned with vertex indices.
struct GaugeTorus {
  Quiver quiver;
  Dims dims;
  TorusData torus;
  std::vector<int> offsets;  // per vertex, start of its coordinate block

  int coord(int vertex_index, int a) const;  // a is 0-based within the block
  int coord(const std::string& vertex, int a) const;
};

GaugeTorus gauge_torus(const Quiver& q, const Dims& n);

// Multiset of torus characters with multiplicities, kept deduplicated and
// sorted for deterministic reports.
struct WeightMultiset {
  TorusData ambient;
  bool scalar_flavor = false;
  std::vector<std::pair<Character, Int>> items;

  void add(const Character& xi, const Int& mult = 1);
  void canonicalize();
  Int total_multiplicity() const;
  bool operator==(const WeightMultiset& o) const {
    return ambient == o.ambient && scalar_flavor == o.scalar_flavor && items == o.items;
  }
};

// Weights of N = (+)_{e: i -> i'} Hom(V_i, V_{i'}) on the gauge torus:
// each edge contributes -eps_{i,a} + eps_{i',b} over all coordinate pairs.
// Loops include the zero weights a = b.
WeightMultiset weights_of_quiver_rep(const GaugeTorus& g);

// T x Gm with the scalar flavor acting by weight one on everything: every
// weight gains a trailing coordinate equal to 1.
TorusData add_scalar_coordinate(const TorusData& t);
WeightMultiset add_scalar_flavor(const WeightMultiset& w);

// Torus map of the diagonal inclusion GL(V_Q) -> GL(V_Q') induced by a
// vertex-surjective quiver map gamma : Q' -> Q. Source is Q's torus, target
// is Q''s; characters restrict by eps_{(j,a)} |-> eps_{(gamma j, a)}.
TorusMap torus_map_of_vertex_identification(const QuiverMorphism& gamma, const Dims& target_dims);
// Same map with gamma validated as a dismemberment first.
TorusMap torus_map_of_dismemberment(const QuiverMorphism& gamma, const Dims& target_dims);

// Torus map of the block Levi inclusion GL(V_{Q*}) -> GL(V_Q) of an
// explosion: a coordinate permutation matching fragments to consecutive
// blocks. Source blocks are the fragment sizes.
TorusMap torus_map_of_explosion(const Explosion& x);

// Split model of T / diagonal Gm (the all-ones direction).
ScalarQuotient quotient_by_scalar(const TorusData& t);

// Rewrites a weight multiset in the split quotient coordinates; every weight
// must vanish on the all-ones direction.
WeightMultiset weights_to_quotient(const WeightMultiset& w, const ScalarQuotient& q);

}  // namespace cbglue
