#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cbglue/gaugerep.hpp"
#include "cbglue/gluability.hpp"
#include "cbglue/lattice.hpp"

namespace cbglue {

// A homological factor with character xi and multiplicity m stands for the
// linear form <xi,->^m; a K-theoretic one for the binomial (1 - xi^{-1})^m.
// The selection and coprimality rules below coincide for the two kinds, so
// the kind is carried for presentation and never branches the verdicts.
enum class FactorKind { homological, k_theoretic };

struct FactorProduct {
  FactorKind kind = FactorKind::homological;
  std::vector<std::pair<Character, Int>> factors;  // sorted, merged, mult >= 1
  // A zero character makes the whole product the zero function: the linear
  // form <0,-> and the binomial 1 - 0^{-1} = 1 - 1 alike. Zero factors only
  // arise from restriction; they stay recorded and raise this flag.
  bool vanishes = false;

  void canonicalize();
  Int total_multiplicity() const;
  bool operator==(const FactorProduct& o) const {
    return kind == o.kind && factors == o.factors && vanishes == o.vanishes;
  }
};

struct EulerFactors {
  FactorProduct left;   // weights pairing negatively with lambda
  FactorProduct right;  // weights pairing positively
};

// Splits the weights by the sign of <lambda, xi> (lambda in the same
// coordinates as the weights); each contributes |<lambda, xi>| times its
// multiplicity. Zero pairings contribute to neither side.
EulerFactors euler_factors(const WeightMultiset& w, const Cocharacter& lambda,
                           FactorKind kind = FactorKind::homological);
inline EulerFactors k_theoretic_factors(const WeightMultiset& w, const Cocharacter& lambda) {
  return euler_factors(w, lambda, FactorKind::k_theoretic);
}

// Applies character restriction to every factor. Factors restricting to the
// zero character set the vanishes flag (for both kinds; the trivial
// character kills a K-theoretic binomial the same way).
FactorProduct restrict_factors(const FactorProduct& phi, const TorusMap& restriction);

struct LambdaVerdict {
  Cocharacter lambda;  // ambient coordinates
  bool left_nonzero = true;
  bool right_nonzero = true;
  // A weight pair (negative side, positive side) whose restrictions are
  // nonzero and Q-proportional; the restricted products then share an
  // irreducible factor. One rule for both kinds: two binomials
  // 1 - chi^{-1} share a factor exactly when the exponents are nonzero
  // proportional, both being 1 - chi0^{+-1} times a unit for the primitive
  // chi0 underneath.
  std::optional<std::pair<Character, Character>> common_factor;
  bool exact = false;  // left_nonzero && right_nonzero && !common_factor
  EulerFactors restricted;
};

LambdaVerdict lambda_verdict(const WeightMultiset& w, const Cocharacter& lambda,
                             const TorusMap& restriction,
                             FactorKind kind = FactorKind::homological);

// Blockwise weakly decreasing vectors with entries in [-bound, bound],
// streamed in ascending lexicographic order on the concatenated vector.
// The callback returns false to stop early.
void for_each_dominant(const TorusData& t, int bound,
                       const std::function<bool(const Cocharacter&)>& fn);
std::vector<Cocharacter> enumerate_dominant(const TorusData& t, int bound);
// Number of such vectors: product over blocks of multiset coefficients.
Int count_dominant(const TorusData& t, int bound);

struct CrossCheckFailure {
  std::string what;
  Cocharacter lambda;  // ambient coordinates when applicable, else empty
};

struct CrossCheckReport {
  bool gluable = false;
  bool consistent = true;
  size_t witnesses_checked = 0;   // non-gluable direction
  size_t pairs_scanned = 0;       // gluable direction, support pairs
  Int dominant_count = 0;         // size of the dominant stream at this bound
  size_t lambdas_enumerated = 0;  // how many the literal walk visited
  bool enumeration_truncated = false;
  std::vector<CrossCheckFailure> failures;
};

// Consistency check between the gluability verdict and the factor mechanism.
// Non-gluable: every witness cocharacter mu must fail exactness at
// lambda = mu itself (the witness pair lands on opposite sides there, so the
// restricted products share a factor or one of them vanishes).
// Gluable: every dominant lambda up to the bound must be exact. Decided in
// two ways: a complete scan over support pairs with nonzero proportional
// restrictions (a boxed separating lambda for such a pair, found by dynamic
// programming over coordinate sums, contradicts the verdict), together with
// a per-weight check that nothing with a nonzero gauge pairing restricts to
// zero; and a literal walk of the stream whenever its size fits under
// literal_cap (otherwise enumeration_truncated is set).
// Any discrepancy lands in failures; consistent means none were found.
CrossCheckReport cross_check(const GluabilityProblem& p, int bound,
                             FactorKind kind = FactorKind::homological,
                             long literal_cap = 200000);

}  // namespace cbglue
