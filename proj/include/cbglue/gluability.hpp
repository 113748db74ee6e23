#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cbglue/gaugerep.hpp"
#include "cbglue/lattice.hpp"
#include "cbglue/quiver.hpp"

namespace cbglue {

// The data deciding whether a map of pairs (tilde_H, H) -> (tilde_G, G) is
// gluable for the representation with the given weights:
//   weights      characters of the tilde_G torus (the ambient of the multiset)
//   restriction  torus map tilde_H -> tilde_G; characters restrict through it
//   gauge        inclusion of the T_G lattice into the tilde_G torus
struct GluabilityProblem {
  WeightMultiset weights;
  TorusMap restriction;
  TorusMap gauge;

  void validate() const;
  static GluabilityProblem with_identity_gauge(WeightMultiset w, TorusMap restriction);
};

// A pair of weights whose restrictions span at most a line while some gauge
// cocharacter separates their signs. Every witness is revalidated before it
// is reported.
struct GluabilityWitness {
  Character xi1, xi2;        // weights upstairs
  Character r1, r2;          // their restrictions
  std::optional<Rat> alpha;  // r1 == alpha * r2 when determined
  bool alpha_unconstrained = false;
  Cocharacter mu_gauge;  // separating cocharacter, gauge coordinates
  Cocharacter mu;        // the same, pushed into the ambient torus
  bool zero_restrictions = false;
};

struct GluabilityReport {
  bool gluable = true;
  // False only when some witness has both restrictions zero; those pairs
  // obstruct injectivity separately from the main verdict.
  bool injectivity_ok = true;
  std::vector<GluabilityWitness> witnesses;
  size_t support_size = 0;
  size_t pairs_checked = 0;
};

// Scans all unordered pairs of support weights. The pair enumeration is
// partitioned across workers when COULOMB_GLUE_THREADS asks for them; the
// witness list is sorted, so reports do not depend on the worker count.
GluabilityReport is_gluable(const GluabilityProblem& p);

// Self-check for the scalar-flavored triple: the weights gain a flavor
// coordinate equal to one, the reference torus becomes the flavored ambient
// itself (restriction = identity), and the gauge stays as it was. Any pair
// with proportional restrictions is then forced equal, so a false verdict
// can only mean an internal bug; this throws InternalError in that case.
GluabilityReport gluable_after_scalar(const GluabilityProblem& p);

struct ShrinkingCheck {
  bool large_gluable = false;
  bool small_gluable = false;
  bool monotone = false;  // large gluable implies small gluable
};

// inclusion maps the smaller lattice into p's gauge lattice.
ShrinkingCheck check_shrinking_monotonicity(const GluabilityProblem& p, const TorusMap& inclusion);

// Split scalar-quotient model of an identity-gauge problem: both tori are
// quotiented by their diagonal Gm, the weights and the restriction descend.
// Every weight must vanish on the diagonal (quiver weights do).
GluabilityProblem scalar_quotient_problem(const WeightMultiset& w, const TorusMap& restriction);

struct QuiverGluingOptions {
  bool quotient_scalar = false;
};

struct QuiverGluingResult {
  GluabilityProblem problem;  // as decided (split model when quotienting)
  GluabilityReport report;
  ParallelLiftReport hypotheses;
  bool dismemberment = false;  // edge bijection and isolated-vertex bijection
  std::string dismemberment_why;  // first violated condition when false
  bool lemma_applies = false;  // dismemberment + loop-free + parallels aligned
                               // + lifts parallel
};

// Builds and decides the problem of a vertex identification gamma : Q' -> Q
// with the given dimensions on Q. Dismemberments are the main case; vertex
// identifications that only fail the isolated-vertex bijection (partition
// gluings with parts of size one produce these) are decided the same way,
// with the failure recorded in the result. When gamma is a dismemberment and
// the structural hypotheses hold, the verdict is guaranteed affirmative and
// is asserted (InternalError otherwise).
QuiverGluingResult gluable_for_quiver_dismemberment(const QuiverMorphism& gamma,
                                                    const Dims& target_dims,
                                                    const QuiverGluingOptions& options = {});

// Induced map between split scalar-quotient models. Requires the original
// map to send the source direction into Z * (target direction).
TorusMap quotient_torus_map(const TorusMap& f, const ScalarQuotient& source_q,
                            const ScalarQuotient& target_q);

}  // namespace cbglue
