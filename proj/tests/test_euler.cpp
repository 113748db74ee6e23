#include <doctest.h>

#include <random>

#include "cbglue/euler.hpp"
#include "cbglue/gluability.hpp"
#include "corpus.hpp"

using namespace cbglue;

namespace {

IntVec iv(std::initializer_list<long> xs) {
  IntVec out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

WeightMultiset single_weight_rank2() {
  WeightMultiset w;
  w.ambient = TorusData::with_trivial_blocks(2);
  w.add(iv({-1, 1}));
  return w;
}

GluabilityProblem split_parallel_problem() {
  QuiverMorphism gamma;
  gamma.target.vertices = {"u", "w"};
  gamma.target.edges = {{"p1", "u", "w"}, {"p2", "u", "w"}};
  gamma.source.vertices = {"u1", "w1", "u2", "w2"};
  gamma.source.edges = {{"q1", "u1", "w1"}, {"q2", "u2", "w2"}};
  gamma.vertex_map = {{"u1", "u"}, {"w1", "w"}, {"u2", "u"}, {"w2", "w"}};
  gamma.edge_map = {{"q1", "p1"}, {"q2", "p2"}};
  return gluable_for_quiver_dismemberment(gamma, {1, 1}).problem;
}

GluabilityProblem chain_problem() {
  Quiver chain;
  chain.vertices = {"c1", "c2"};
  chain.edges = {{"e", "c1", "c2"}};
  return gluable_for_quiver_dismemberment(finest_dismemberment(chain), {2, 1}).problem;
}

}  // namespace

TEST_CASE("factor products canonicalize and merge") {
  FactorProduct f;
  f.factors.emplace_back(iv({1, 0}), 2);
  f.factors.emplace_back(iv({-1, 1}), 1);
  f.factors.emplace_back(iv({1, 0}), 3);
  f.canonicalize();
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].first == iv({-1, 1}));
  CHECK(f.factors[1].second == 5);
  CHECK(f.total_multiplicity() == 6);
  CHECK_FALSE(f.vanishes);

  FactorProduct z;
  z.factors.emplace_back(iv({0, 0}), 1);
  z.canonicalize();
  CHECK(z.vanishes);

  FactorProduct bad;
  bad.factors.emplace_back(iv({1, 0}), 0);
  CHECK_THROWS_AS(bad.canonicalize(), ValidationError);
}

TEST_CASE("euler factors split by pairing sign") {
  WeightMultiset w = single_weight_rank2();

  EulerFactors f = euler_factors(w, iv({1, 0}));
  REQUIRE(f.left.factors.size() == 1);
  CHECK(f.left.factors[0].first == iv({-1, 1}));
  CHECK(f.left.factors[0].second == 1);
  CHECK(f.left.kind == FactorKind::homological);
  CHECK(f.right.factors.empty());

  // The multiplicity scales with the pairing value.
  f = euler_factors(w, iv({2, 0}));
  CHECK(f.left.factors[0].second == 2);

  // Orthogonal lambda contributes to neither side.
  f = euler_factors(w, iv({1, 1}));
  CHECK(f.left.factors.empty());
  CHECK(f.right.factors.empty());

  f = k_theoretic_factors(w, iv({1, 0}));
  CHECK(f.left.kind == FactorKind::k_theoretic);
  CHECK(f.left.factors.size() == 1);

  CHECK_THROWS_AS(euler_factors(w, iv({1, 0, 0})), DimensionError);
}

TEST_CASE("negating lambda swaps the two sides") {
  std::mt19937_64 rng(8080);
  for (int trial = 0; trial < 50; ++trial) {
    GluabilityProblem p = corpus::random_small_problem(rng);
    Cocharacter lam(p.weights.ambient.rank);
    for (auto& x : lam) x = corpus::pick(rng, -2, 2);
    Cocharacter neg = lam;
    for (auto& x : neg) x = -x;
    EulerFactors a = euler_factors(p.weights, lam);
    EulerFactors b = euler_factors(p.weights, neg);
    CHECK(a.left == b.right);
    CHECK(a.right == b.left);
  }
}

TEST_CASE("restriction can make a factor product vanish") {
  WeightMultiset w = single_weight_rank2();
  TorusMap diag;
  diag.source = TorusData::with_trivial_blocks(1);
  diag.target = w.ambient;
  diag.m = IntMatrix(2, 1);
  diag.m.at(0, 0) = 1;
  diag.m.at(1, 0) = 1;

  EulerFactors f = euler_factors(w, iv({1, 0}));
  FactorProduct r = restrict_factors(f.left, diag);
  CHECK(r.vanishes);
  REQUIRE(r.factors.size() == 1);
  CHECK(r.factors[0].first == iv({0}));
  CHECK(r.kind == f.left.kind);

  LambdaVerdict v = lambda_verdict(w, iv({1, 0}), diag);
  CHECK_FALSE(v.left_nonzero);
  CHECK(v.right_nonzero);
  CHECK_FALSE(v.exact);
  CHECK_FALSE(v.common_factor.has_value());
}

TEST_CASE("identity restriction keeps simple verdicts exact") {
  WeightMultiset w = single_weight_rank2();
  TorusMap id = TorusMap::identity(w.ambient);

  LambdaVerdict v = lambda_verdict(w, iv({1, 0}), id);
  CHECK(v.left_nonzero);
  CHECK(v.right_nonzero);
  CHECK(v.exact);

  v = lambda_verdict(w, iv({0, 0}), id);
  CHECK(v.exact);
  CHECK(v.restricted.left.factors.empty());
  CHECK(v.restricted.right.factors.empty());

  CHECK_THROWS_AS(lambda_verdict(w, iv({1}), id), DimensionError);
}

TEST_CASE("proportional restrictions on opposite sides are a common factor") {
  GluabilityProblem p = split_parallel_problem();
  Cocharacter mu = iv({1, 0, -1, 0});

  for (FactorKind kind : {FactorKind::homological, FactorKind::k_theoretic}) {
    LambdaVerdict v = lambda_verdict(p.weights, mu, p.restriction, kind);
    CHECK(v.left_nonzero);
    CHECK(v.right_nonzero);
    REQUIRE(v.common_factor.has_value());
    CHECK(v.common_factor->first == iv({-1, 1, 0, 0}));
    CHECK(v.common_factor->second == iv({0, 0, -1, 1}));
    CHECK_FALSE(v.exact);
  }
}

TEST_CASE("dominant enumeration is ascending and blockwise decreasing") {
  std::vector<Cocharacter> rank1 = enumerate_dominant(TorusData::with_trivial_blocks(1), 1);
  REQUIRE(rank1.size() == 3);
  CHECK(rank1[0] == iv({-1}));
  CHECK(rank1[1] == iv({0}));
  CHECK(rank1[2] == iv({1}));

  std::vector<Cocharacter> block2 = enumerate_dominant(TorusData::single_block(2), 1);
  REQUIRE(block2.size() == 6);
  CHECK(block2.front() == iv({-1, -1}));
  CHECK(block2.back() == iv({1, 1}));
  for (size_t i = 0; i + 1 < block2.size(); ++i) CHECK(block2[i] < block2[i + 1]);
  for (const Cocharacter& c : block2) CHECK(c[0] >= c[1]);
  CHECK(count_dominant(TorusData::single_block(2), 1) == 6);

  TorusData mixed;
  mixed.rank = 3;
  mixed.blocks = {2, 1};
  CHECK(enumerate_dominant(mixed, 1).size() == 18);
  CHECK(count_dominant(mixed, 1) == 18);

  TorusData zero;
  zero.rank = 0;
  CHECK(enumerate_dominant(zero, 2).size() == 1);
  CHECK(count_dominant(zero, 2) == 1);

  TorusData padded;
  padded.rank = 2;
  padded.blocks = {0, 2};
  CHECK(enumerate_dominant(padded, 1).size() == 6);

  CHECK_THROWS_AS(enumerate_dominant(TorusData::with_trivial_blocks(1), -1), ValidationError);
}

TEST_CASE("dominant enumeration can stop early") {
  size_t seen = 0;
  for_each_dominant(TorusData::with_trivial_blocks(2), 2, [&](const Cocharacter&) {
    ++seen;
    return seen < 4;
  });
  CHECK(seen == 4);
}

TEST_CASE("dominant count matches the stream on random shapes") {
  std::mt19937_64 rng(606060);
  for (int trial = 0; trial < 20; ++trial) {
    TorusData t;
    int nblocks = corpus::pick(rng, 1, 3);
    for (int b = 0; b < nblocks; ++b) {
      int size = corpus::pick(rng, 0, 3);
      t.blocks.push_back(size);
      t.rank += size;
    }
    int bound = corpus::pick(rng, 1, 2);
    CHECK(count_dominant(t, bound) == Int(enumerate_dominant(t, bound).size()));
  }
}

TEST_CASE("cross check accepts the split parallel counterexample") {
  GluabilityProblem p = split_parallel_problem();
  for (FactorKind kind : {FactorKind::homological, FactorKind::k_theoretic}) {
    CrossCheckReport r = cross_check(p, 2, kind);
    CHECK_FALSE(r.gluable);
    CHECK(r.consistent);
    CHECK(r.witnesses_checked == 1);
    CHECK(r.lambdas_enumerated == 0);
    CHECK_FALSE(r.enumeration_truncated);
    CHECK(r.failures.empty());
  }
}

TEST_CASE("cross check walks the dominant stream on gluable problems") {
  GluabilityProblem p = chain_problem();
  CrossCheckReport r = cross_check(p, 2);
  CHECK(r.gluable);
  CHECK(r.consistent);
  CHECK(r.dominant_count == 15 * 5);
  CHECK(r.lambdas_enumerated == 75);
  CHECK_FALSE(r.enumeration_truncated);
  CHECK(r.pairs_scanned > 0);

  // Independent replay of the walk through the factor machinery itself.
  for (const Cocharacter& lam : enumerate_dominant(p.gauge.source, 2)) {
    LambdaVerdict v = lambda_verdict(p.weights, p.gauge.push(lam), p.restriction);
    CHECK(v.exact);
  }

  CrossCheckReport k = cross_check(p, 2, FactorKind::k_theoretic);
  CHECK(k.consistent);
  CHECK(k.lambdas_enumerated == r.lambdas_enumerated);
}

TEST_CASE("cross check respects the literal cap") {
  GluabilityProblem p = chain_problem();
  CrossCheckReport r = cross_check(p, 2, FactorKind::homological, 0);
  CHECK(r.consistent);
  CHECK(r.enumeration_truncated);
  CHECK(r.lambdas_enumerated == 0);

  r = cross_check(p, 2, FactorKind::homological, -1);
  CHECK(r.enumeration_truncated);

  CHECK_THROWS_AS(cross_check(p, 0), ValidationError);
}

TEST_CASE("cross check reports weights that vanish under restriction") {
  WeightMultiset w;
  w.ambient = TorusData::with_trivial_blocks(1);
  w.add(iv({1}));
  TorusMap zero;
  zero.source = TorusData::with_trivial_blocks(1);
  zero.target = w.ambient;
  zero.m = IntMatrix(1, 1);
  GluabilityProblem p = GluabilityProblem::with_identity_gauge(w, zero);

  REQUIRE(is_gluable(p).gluable);
  CrossCheckReport r = cross_check(p, 1);
  CHECK(r.gluable);
  CHECK_FALSE(r.consistent);
  CHECK(r.pairs_scanned == 0);
  REQUIRE(r.failures.size() == 3);
  CHECK(r.failures[0].what.find("restricts to zero") != std::string::npos);
  CHECK(r.failures[1].what == "dominant cocharacter is not exact");
  CHECK(r.failures[1].lambda == iv({-1}));
  CHECK(r.failures[2].lambda == iv({1}));
}

TEST_CASE("positively proportional restrictions are not flagged") {
  WeightMultiset w;
  w.ambient = TorusData::with_trivial_blocks(2);
  w.add(iv({1, 0}));
  w.add(iv({2, 0}));
  w.canonicalize();
  GluabilityProblem p = GluabilityProblem::with_identity_gauge(w, TorusMap::identity(w.ambient));

  CrossCheckReport r = cross_check(p, 2);
  CHECK(r.gluable);
  CHECK(r.consistent);
  CHECK(r.pairs_scanned == 3);  // both self pairs and the cross pair
  CHECK(r.lambdas_enumerated == 25);
}
