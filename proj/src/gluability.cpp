#include "cbglue/gluability.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <thread>
#include <tuple>

namespace cbglue {

namespace {

int worker_count() {
  const char* env = std::getenv("COULOMB_GLUE_THREADS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 0) return 0;  // malformed means serial
  return static_cast<int>(std::min<long>(v, 256));
}

bool witness_less(const GluabilityWitness& a, const GluabilityWitness& b) {
  return std::tie(a.xi1, a.xi2, a.mu_gauge) < std::tie(b.xi1, b.xi2, b.mu_gauge);
}

}  // namespace

void GluabilityProblem::validate() const {
  restriction.validate();
  gauge.validate();
  if (!(restriction.target == weights.ambient))
    throw DimensionError("gluability problem: restriction target is not the weight torus");
  if (!(gauge.target == weights.ambient))
    throw DimensionError("gluability problem: gauge inclusion target is not the weight torus");
  for (const auto& [xi, mult] : weights.items) {
    (void)mult;
    if (static_cast<int>(xi.size()) != weights.ambient.rank)
      throw DimensionError("gluability problem: weight rank mismatch");
  }
}

GluabilityProblem GluabilityProblem::with_identity_gauge(WeightMultiset w, TorusMap restriction) {
  GluabilityProblem p;
  p.gauge = TorusMap::identity(w.ambient);
  p.weights = std::move(w);
  p.restriction = std::move(restriction);
  p.validate();
  return p;
}

GluabilityReport is_gluable(const GluabilityProblem& p) {
  p.validate();
  const auto& support = p.weights.items;
  const size_t s = support.size();

  // Restrictions and gauge pullbacks are shared by every pair.
  std::vector<Character> restricted(s), pulled(s);
  for (size_t i = 0; i < s; ++i) {
    restricted[i] = p.restriction.restrict_character(support[i].first);
    pulled[i] = p.gauge.restrict_character(support[i].first);
  }

  std::vector<std::pair<size_t, size_t>> pairs;
  pairs.reserve(s * (s + 1) / 2);
  for (size_t i = 0; i < s; ++i)
    for (size_t j = i; j < s; ++j) pairs.emplace_back(i, j);

  auto examine = [&](size_t i, size_t j, std::vector<GluabilityWitness>& out) {
    // Condition (1): the two restrictions span at most a line over Q. Both
    // orders are covered because the rank condition is symmetric.
    Proportionality prop = proportional_over_Q(restricted[i], restricted[j]);
    if (!prop.rank_le_one) return;
    // Condition (2): some gauge cocharacter separates the signs. Feasibility
    // is symmetric in the pair, so one orientation suffices.
    std::optional<Cocharacter> mu = sign_feasible(pulled[i], pulled[j]);
    if (!mu) return;
    GluabilityWitness w;
    w.xi1 = support[i].first;
    w.xi2 = support[j].first;
    w.r1 = restricted[i];
    w.r2 = restricted[j];
    w.alpha = prop.alpha;
    w.alpha_unconstrained = prop.unconstrained;
    w.mu_gauge = *mu;
    w.mu = p.gauge.push(*mu);
    w.zero_restrictions = is_zero(w.r1) && is_zero(w.r2);

    // Revalidate the certificate against the original data.
    if (rank_over_Q({w.r1, w.r2}) > 1)
      throw InternalError("gluability witness failed revalidation: restrictions independent");
    if (sgn(pairing(w.xi1, w.mu)) * sgn(pairing(w.xi2, w.mu)) >= 0)
      throw InternalError("gluability witness failed revalidation: signs not separated");
    out.push_back(std::move(w));
  };

  std::vector<GluabilityWitness> witnesses;
  int workers = worker_count();
  if (workers > 1 && pairs.size() > 1) {
    size_t nthreads = std::min<size_t>(workers, pairs.size());
    std::vector<std::vector<GluabilityWitness>> found(nthreads);
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(nthreads);
    for (size_t t = 0; t < nthreads; ++t) {
      threads.emplace_back([&, t]() {
        try {
          for (size_t k = t; k < pairs.size(); k += nthreads)
            examine(pairs[k].first, pairs[k].second, found[t]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : threads) th.join();
    for (auto& err : errors)
      if (err) std::rethrow_exception(err);
    for (auto& chunk : found)
      for (auto& w : chunk) witnesses.push_back(std::move(w));
  } else {
    for (const auto& [i, j] : pairs) examine(i, j, witnesses);
  }

  std::sort(witnesses.begin(), witnesses.end(), witness_less);

  GluabilityReport rep;
  rep.support_size = s;
  rep.pairs_checked = pairs.size();
  rep.gluable = witnesses.empty();
  rep.injectivity_ok =
      std::none_of(witnesses.begin(), witnesses.end(),
                   [](const GluabilityWitness& w) { return w.zero_restrictions; });
  rep.witnesses = std::move(witnesses);
  return rep;
}

GluabilityReport gluable_after_scalar(const GluabilityProblem& p) {
  p.validate();
  if (p.weights.scalar_flavor)
    throw ValidationError("gluable_after_scalar: problem already carries the scalar flavor");

  GluabilityProblem flavored;
  flavored.weights = add_scalar_flavor(p.weights);
  flavored.restriction = TorusMap::identity(flavored.weights.ambient);
  flavored.gauge.source = p.gauge.source;
  flavored.gauge.target = flavored.weights.ambient;
  flavored.gauge.m = IntMatrix(p.gauge.m.rows + 1, p.gauge.m.cols);
  for (int r = 0; r < p.gauge.m.rows; ++r)
    for (int c = 0; c < p.gauge.m.cols; ++c) flavored.gauge.m.at(r, c) = p.gauge.m.at(r, c);
  flavored.validate();

  GluabilityReport rep = is_gluable(flavored);
  if (!rep.gluable)
    throw InternalError("gluable_after_scalar: scalar-flavored triple reported non-gluable");
  return rep;
}

ShrinkingCheck check_shrinking_monotonicity(const GluabilityProblem& p, const TorusMap& inclusion) {
  if (inclusion.target.rank != p.gauge.source.rank)
    throw DimensionError("shrinking check: inclusion does not land in the gauge lattice");
  GluabilityProblem smaller = p;
  smaller.gauge = p.gauge.compose(inclusion);
  smaller.validate();

  ShrinkingCheck out;
  out.large_gluable = is_gluable(p).gluable;
  out.small_gluable = is_gluable(smaller).gluable;
  out.monotone = !out.large_gluable || out.small_gluable;
  return out;
}

TorusMap quotient_torus_map(const TorusMap& f, const ScalarQuotient& source_q,
                            const ScalarQuotient& target_q) {
  if (!(f.source.rank == source_q.original.rank) || !(f.target.rank == target_q.original.rank))
    throw DimensionError("quotient_torus_map: quotient data does not match the map");
  IntMatrix full = target_q.p.mul(f.m).mul(source_q.b);
  // Column 0 is the image of the quotiented source direction in adapted
  // coordinates; it must be a multiple of the quotiented target direction.
  for (int r = 1; r < full.rows; ++r)
    if (sgn(full.at(r, 0)) != 0)
      throw ValidationError(
          "quotient_torus_map: map does not descend to the scalar quotients");
  TorusMap out;
  out.source = source_q.quotient;
  out.target = target_q.quotient;
  out.m = IntMatrix(full.rows - 1, full.cols - 1);
  for (int r = 1; r < full.rows; ++r)
    for (int c = 1; c < full.cols; ++c) out.m.at(r - 1, c - 1) = full.at(r, c);
  out.validate();
  return out;
}

GluabilityProblem scalar_quotient_problem(const WeightMultiset& w, const TorusMap& restriction) {
  ScalarQuotient below_q = quotient_by_scalar(restriction.source);
  ScalarQuotient above_q = quotient_by_scalar(restriction.target);
  GluabilityProblem p;
  p.weights = weights_to_quotient(w, above_q);
  p.restriction = quotient_torus_map(restriction, below_q, above_q);
  p.gauge = TorusMap::identity(above_q.quotient);
  p.validate();
  return p;
}

QuiverGluingResult gluable_for_quiver_dismemberment(const QuiverMorphism& gamma,
                                                    const Dims& target_dims,
                                                    const QuiverGluingOptions& options) {
  QuiverGluingResult out;
  out.dismemberment = is_dismemberment(gamma, &out.dismemberment_why);
  out.hypotheses = parallel_lifting_check(gamma);
  out.lemma_applies = out.dismemberment && out.hypotheses.hypotheses_hold();

  TorusMap restriction = torus_map_of_vertex_identification(gamma, target_dims);
  GaugeTorus above = gauge_torus(gamma.source, gamma.pull_back_dims(target_dims));
  WeightMultiset weights = weights_of_quiver_rep(above);

  if (options.quotient_scalar)
    out.problem = scalar_quotient_problem(weights, restriction);
  else
    out.problem = GluabilityProblem::with_identity_gauge(weights, restriction);

  out.report = is_gluable(out.problem);
  if (out.lemma_applies && !out.report.gluable)
    throw InternalError(
        "gluable_for_quiver_dismemberment: hypotheses hold but the verdict is negative");
  return out;
}

}  // namespace cbglue
