#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "cbglue/errors.hpp"

namespace cbglue {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;

// Characters and cocharacters of a split torus are both plain integer vectors
// in the coordinates fixed by a TorusData. The aliases only document which
// side of the pairing a vector lives on.
using Character = IntVec;
using Cocharacter = IntVec;

bool is_zero(const IntVec& v);
IntVec zero_vec(int rank);
std::string to_string(const IntVec& v);

// <xi, mu> = sum_i xi_i * mu_i
Int pairing(const Character& xi, const Cocharacter& mu);

struct IntMatrix {
  int rows = 0;
  int cols = 0;
  IntVec a;  // row-major

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  static IntMatrix identity(int n);

  Int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Int& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  IntVec apply(const IntVec& x) const;            // m * x, x has cols entries
  IntVec apply_transpose(const IntVec& x) const;  // m^T * x, x has rows entries
  IntMatrix mul(const IntMatrix& rhs) const;

  bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

// Rank over Q via exact rational elimination. Matrices here are small.
int rank_over_Q(const IntMatrix& m);
int rank_over_Q(const std::vector<IntVec>& rows);
bool in_span_over_Q(const std::vector<IntVec>& gens, const IntVec& b);

// A split torus with a fixed coordinate basis. blocks records the GL-factor
// sizes (type-A convention: dominance is blockwise weakly decreasing).
// central_quotients lists primitive cocharacter directions that have been
// quotiented out; characters attached to such a torus must vanish on them.
struct TorusData {
  int rank = 0;
  std::vector<int> blocks;
  std::vector<Cocharacter> central_quotients;

  static TorusData with_trivial_blocks(int rank);
  static TorusData single_block(int rank);
  void validate() const;

  bool operator==(const TorusData& o) const {
    return rank == o.rank && blocks == o.blocks && central_quotients == o.central_quotients;
  }
};

// A homomorphism of tori, stored as the integer matrix acting on
// cocharacters (target.rank x source.rank). Characters of the target
// restrict to the source through the transpose.
struct TorusMap {
  TorusData source;
  TorusData target;
  IntMatrix m;

  static TorusMap identity(const TorusData& t);
  void validate() const;

  Cocharacter push(const Cocharacter& mu) const;
  Character restrict_character(const Character& xi) const;

  // this . inner : inner.source -> this.target. Ranks must agree in the middle.
  TorusMap compose(const TorusMap& inner) const;
};

struct Proportionality {
  std::optional<Rat> alpha;    // v1 == alpha * v2 when present
  bool unconstrained = false;  // both vectors zero; alpha reported as 0
  bool rank_le_one = false;    // rank [v1; v2] <= 1
};

Proportionality proportional_over_Q(const IntVec& v1, const IntVec& v2);

// Decides whether some integer vector mu satisfies <xi1,mu> * <xi2,mu> < 0
// and returns a witness. Feasible iff xi1, xi2 are Q-independent, or
// xi1 = c * xi2 with c < 0 and xi2 != 0. Witnesses are built from a 2x2
// adjugate when independent and are gcd-reduced.
std::optional<Cocharacter> sign_feasible(const Character& xi1, const Character& xi2);

bool is_dominant(const TorusData& t, const Cocharacter& mu);
// Sorts each block weakly decreasing; idempotent and orbit-preserving.
Cocharacter dominantize(const TorusData& t, const Cocharacter& mu);

// Explicit splitting Z^r = Z v (+) C for a primitive v, so the quotient
// lattice stays free. p is unimodular with p * v = e1 and b = p^{-1}.
// Quotient cocharacters are coordinates 2..r of p * mu; quotient characters
// embed back via p^T (0, eta).
struct ScalarQuotient {
  TorusData original;
  Cocharacter v;
  TorusData quotient;
  IntMatrix p;
  IntMatrix b;

  Cocharacter cochar_to_quotient(const Cocharacter& mu) const;
  Cocharacter cochar_from_quotient(const Cocharacter& eta) const;
  Character char_to_quotient(const Character& xi) const;  // requires <xi, v> == 0
  Character char_from_quotient(const Character& eta) const;
};

ScalarQuotient quotient_split(const TorusData& t, const Cocharacter& v);

}  // namespace cbglue
