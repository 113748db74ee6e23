#pragma once

#include <string>
#include <vector>

#include "cbglue/gaugerep.hpp"
#include "cbglue/quiver.hpp"

namespace cbglue {

// Ordered partition: parts stay in the order given.
struct Partition {
  std::vector<int> parts;

  int sum() const;
  void validate() const;  // at least one part, all positive
};

struct BuiltQuiver {
  Quiver quiver;
  Dims dims;
};

// c1 -> c2 -> ... -> cn with dims 1..n; edge ids ec{t}.
BuiltQuiver build_chain(int n);

// Partition quiver: chain c1..c(n-1) with dims 1..n-1 and, per part m_k, a
// leg L{k}v1..L{k}v{m_k} with dims m_k..1 hanging off c(n-1). Edge ids:
// ec{t} along the chain, eL{k} for the attachment c(n-1) -> L{k}v1, and
// eL{k}v{m} for L{k}v{m+1} -> L{k}v{m} (legs point toward the head).
BuiltQuiver build_partition_quiver(const Partition& p);  // total must be >= 2

// The disjoint legs alone, with the same ids and dims as above.
BuiltQuiver build_a_legs(const Partition& p);

// Transpose Jordan type attached to a puncture.
struct Puncture {
  std::vector<int> parts;  // weakly decreasing, positive

  void validate() const;
};

// Comet: central vertex "c" of dim n carrying g loops (edge ids loop{t}),
// plus one leg per puncture. Step m of leg k has dim h_{m+1} + ... + h_k;
// the leg stops before dim 0, so a regular puncture h = (1,..,1) gives the
// full-length leg and h = (n) gives none. The step dims are automatically
// concave: 2 n_m <= n_{m-1} + n_{m+1} with n_0 = n.
BuiltQuiver build_comet(int genus, int n, const std::vector<Puncture>& punctures);

// Gluing presentation of the partition quiver: explode the disjoint union
// A_legs | chain at the dim-n chain end into the parts, then identify each
// fragment with the head of the matching leg. The morphism is a genuine
// dismemberment exactly when every part exceeds one; a size-one leg is
// isolated upstairs but attached in the glued quiver.
struct PartitionGluing {
  BuiltQuiver glued;        // the partition quiver
  BuiltQuiver pieces;       // chain c1..cn and the legs, disjoint
  Explosion explosion;      // pieces exploded at the chain end
  QuiverMorphism morphism;  // exploded -> glued vertex identification
  TorusMap identification;  // torus of glued -> torus of exploded
  TorusMap composite;       // torus of glued -> torus of pieces
};

PartitionGluing partition_gluing_map(const Partition& p);  // total must be >= 2

}  // namespace cbglue
