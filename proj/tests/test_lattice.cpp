#include <doctest.h>

#include <random>

#include "cbglue/lattice.hpp"
#include "oracles.hpp"

using namespace cbglue;

namespace {

IntVec iv(std::initializer_list<long> xs) {
  IntVec out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("pairing and vector basics") {
  CHECK(pairing(iv({1, 2}), iv({3, 4})) == 11);
  CHECK(pairing(IntVec{}, IntVec{}) == 0);
  CHECK_THROWS_AS(pairing(iv({1}), iv({1, 2})), DimensionError);
  CHECK(is_zero(zero_vec(3)));
  CHECK_FALSE(is_zero(iv({0, -1})));
  CHECK(to_string(iv({1, -2})) == "(1,-2)");
  CHECK(to_string(IntVec{}) == "()");
}

TEST_CASE("matrix apply and multiply") {
  IntMatrix m(2, 3);
  m.at(0, 0) = 1;
  m.at(0, 2) = -1;
  m.at(1, 1) = 2;
  CHECK(m.apply(iv({1, 1, 1})) == iv({0, 2}));
  CHECK(m.apply_transpose(iv({1, 1})) == iv({1, 2, -1}));
  CHECK_THROWS_AS(m.apply(iv({1, 1})), DimensionError);
  CHECK_THROWS_AS(m.apply_transpose(iv({1, 1, 1})), DimensionError);

  IntMatrix id3 = IntMatrix::identity(3);
  CHECK(m.mul(id3) == m);
  CHECK_THROWS_AS(id3.mul(m), DimensionError);
}

TEST_CASE("rank and span over Q") {
  CHECK(rank_over_Q(std::vector<IntVec>{}) == 0);
  CHECK(rank_over_Q({iv({0, 0})}) == 0);
  CHECK(rank_over_Q({iv({2, 4}), iv({1, 2})}) == 1);
  CHECK(rank_over_Q({iv({1, 0}), iv({0, 1})}) == 2);
  CHECK(rank_over_Q({iv({1, 2, 3}), iv({2, 4, 6}), iv({0, 0, 1})}) == 2);
  CHECK(in_span_over_Q({iv({1, 0}), iv({0, 1})}, iv({3, -4})));
  CHECK(in_span_over_Q({iv({2, 2})}, iv({3, 3})));
  CHECK_FALSE(in_span_over_Q({iv({1, 1})}, iv({2, 3})));
  CHECK(in_span_over_Q({}, iv({0, 0})));
  CHECK_FALSE(in_span_over_Q({}, iv({1, 0})));
}

TEST_CASE("proportionality over Q") {
  Proportionality p = proportional_over_Q(iv({2, 4}), iv({1, 2}));
  CHECK(p.rank_le_one);
  REQUIRE(p.alpha.has_value());
  CHECK(*p.alpha == Rat(2));
  CHECK_FALSE(p.unconstrained);

  p = proportional_over_Q(iv({0, 0}), iv({0, 0}));
  CHECK(p.rank_le_one);
  CHECK(p.unconstrained);
  CHECK(*p.alpha == Rat(0));

  p = proportional_over_Q(iv({0, 0}), iv({1, 2}));
  CHECK(p.rank_le_one);
  CHECK(*p.alpha == Rat(0));
  CHECK_FALSE(p.unconstrained);

  // Zero on the right leaves alpha undetermined but the rank is still one.
  p = proportional_over_Q(iv({1, 2}), iv({0, 0}));
  CHECK(p.rank_le_one);
  CHECK_FALSE(p.alpha.has_value());

  p = proportional_over_Q(iv({1, 0}), iv({0, 1}));
  CHECK_FALSE(p.rank_le_one);

  p = proportional_over_Q(iv({1, -1}), iv({-2, 2}));
  CHECK(p.rank_le_one);
  CHECK(*p.alpha == Rat(-1, 2));
}

TEST_CASE("separating cocharacters: pinned witnesses") {
  // Independent pair: adjugate witness from the first nonzero 2x2 minor.
  auto mu = sign_feasible(iv({1, 0}), iv({0, -1}));
  REQUIRE(mu.has_value());
  CHECK(*mu == iv({1, 1}));

  // Negatively proportional pair: coordinate witness.
  mu = sign_feasible(iv({1, -1}), iv({-2, 2}));
  REQUIRE(mu.has_value());
  CHECK(*mu == iv({1, 0}));
}

TEST_CASE("separating cocharacters: infeasible families") {
  CHECK_FALSE(sign_feasible(iv({0, 0}), iv({0, 0})).has_value());
  CHECK_FALSE(sign_feasible(iv({1, 2}), iv({0, 0})).has_value());
  CHECK_FALSE(sign_feasible(iv({0, 0}), iv({1, 2})).has_value());
  CHECK_FALSE(sign_feasible(iv({1, 2}), iv({1, 2})).has_value());
  CHECK_FALSE(sign_feasible(iv({1, 2}), iv({2, 4})).has_value());
  CHECK_FALSE(sign_feasible(IntVec{}, IntVec{}).has_value());
  CHECK(sign_feasible(iv({1, 2}), iv({-1, -2})).has_value());
}

TEST_CASE("separating cocharacters match the box search") {
  // Entries up to 3: a separating mu exists iff one exists in the box of 6.
  std::mt19937_64 rng(20240811);
  std::uniform_int_distribution<int> entry(-3, 3);
  std::uniform_int_distribution<int> rank(1, 4);
  for (int trial = 0; trial < 3000; ++trial) {
    int r = rank(rng);
    IntVec a(r), b(r);
    for (int i = 0; i < r; ++i) a[i] = entry(rng);
    for (int i = 0; i < r; ++i) b[i] = entry(rng);
    auto mu = sign_feasible(a, b);
    auto swapped = sign_feasible(b, a);
    CHECK(mu.has_value() == swapped.has_value());
    bool box = oracle::separating_mu(oracle::to_ll(a), oracle::to_ll(b), 6).has_value();
    CHECK(mu.has_value() == box);
    if (mu) {
      Int prod = pairing(a, *mu) * pairing(b, *mu);
      CHECK(sgn(prod) < 0);
    }
  }
}

TEST_CASE("separating cocharacters on unit entries stay in a box of 2") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> entry(-1, 1);
  for (int trial = 0; trial < 2000; ++trial) {
    int r = 1 + static_cast<int>(rng() % 5);
    IntVec a(r), b(r);
    for (int i = 0; i < r; ++i) a[i] = entry(rng);
    for (int i = 0; i < r; ++i) b[i] = entry(rng);
    auto mu = sign_feasible(a, b);
    bool box = oracle::separating_mu(oracle::to_ll(a), oracle::to_ll(b), 2).has_value();
    CHECK(mu.has_value() == box);
  }
}

TEST_CASE("torus data validation") {
  TorusData t = TorusData::with_trivial_blocks(3);
  CHECK(t.blocks == std::vector<int>{1, 1, 1});
  t.validate();
  CHECK(TorusData::single_block(4).blocks == std::vector<int>{4});

  TorusData bad;
  bad.rank = -1;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad.rank = 3;
  bad.blocks = {2, 2};
  CHECK_THROWS_AS(bad.validate(), DimensionError);
  bad.blocks = {2, 1};
  bad.central_quotients = {iv({1, 1})};
  CHECK_THROWS_AS(bad.validate(), DimensionError);
  bad.central_quotients = {iv({0, 0, 0})};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad.central_quotients = {iv({2, 2, 2})};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad.central_quotients = {iv({1, 1, 1})};
  bad.validate();
}

TEST_CASE("torus maps restrict and push") {
  TorusData src = TorusData::with_trivial_blocks(2);
  TorusData dst = TorusData::with_trivial_blocks(3);
  TorusMap f;
  f.source = src;
  f.target = dst;
  f.m = IntMatrix(3, 2);
  f.m.at(0, 0) = 1;
  f.m.at(1, 0) = 1;
  f.m.at(2, 1) = 1;
  f.validate();
  CHECK(f.push(iv({1, 2})) == iv({1, 1, 2}));
  CHECK(f.restrict_character(iv({1, 2, 3})) == iv({3, 3}));
  // <xi, push(mu)> == <restrict(xi), mu>
  CHECK(pairing(iv({1, 2, 3}), f.push(iv({5, -7}))) ==
        pairing(f.restrict_character(iv({1, 2, 3})), iv({5, -7})));

  TorusMap id = TorusMap::identity(dst);
  TorusMap g = id.compose(f);
  CHECK(g.m == f.m);
  CHECK_THROWS_AS(f.compose(id), DimensionError);

  TorusMap bad = f;
  bad.m = IntMatrix(2, 3);
  CHECK_THROWS_AS(bad.validate(), DimensionError);
}

TEST_CASE("torus maps must descend to quotient lattices") {
  TorusData src = TorusData::with_trivial_blocks(2);
  src.central_quotients = {iv({1, 1})};
  TorusData dst = TorusData::with_trivial_blocks(2);

  TorusMap f;
  f.source = src;
  f.target = dst;
  f.m = IntMatrix::identity(2);
  // (1,1) maps to (1,1), but the target kills nothing.
  CHECK_THROWS_AS(f.validate(), ValidationError);

  f.target.central_quotients = {iv({1, 1})};
  f.validate();
}

TEST_CASE("dominance is blockwise weak decrease") {
  TorusData t;
  t.rank = 3;
  t.blocks = {2, 1};
  t.validate();
  CHECK(dominantize(t, iv({1, 3, 2})) == iv({3, 1, 2}));
  CHECK(is_dominant(t, iv({3, 1, 2})));
  CHECK_FALSE(is_dominant(t, iv({1, 3, 2})));
  CHECK(is_dominant(t, iv({1, 1, -5})));
  CHECK(dominantize(t, dominantize(t, iv({1, 3, 2}))) == dominantize(t, iv({1, 3, 2})));

  TorusData triv = TorusData::with_trivial_blocks(3);
  CHECK(is_dominant(triv, iv({1, 3, 2})));

  CHECK(dominantize(TorusData::single_block(3), iv({1, 2, 3})) == iv({3, 2, 1}));
  CHECK_THROWS_AS(is_dominant(t, iv({1, 2})), DimensionError);
}

TEST_CASE("scalar quotient splitting") {
  TorusData t = TorusData::with_trivial_blocks(3);
  ScalarQuotient q = quotient_split(t, iv({1, 1, 1}));
  CHECK(q.quotient.rank == 2);
  CHECK(q.p.mul(q.b) == IntMatrix::identity(3));
  CHECK(q.p.apply(iv({1, 1, 1})) == iv({1, 0, 0}));

  // Round trips on both sides of the pairing.
  Character xi = iv({1, -1, 0});
  CHECK(pairing(xi, q.v) == 0);
  Character eta = q.char_to_quotient(xi);
  CHECK(q.char_from_quotient(eta) == xi);
  Cocharacter bar = q.cochar_to_quotient(iv({2, 0, -1}));
  CHECK(q.cochar_to_quotient(q.cochar_from_quotient(bar)) == bar);

  // The pairing is preserved for characters that vanish on the direction.
  Cocharacter mu = iv({5, -2, 7});
  CHECK(pairing(xi, mu) == pairing(q.char_to_quotient(xi), q.cochar_to_quotient(mu)));

  CHECK_THROWS_AS(q.char_to_quotient(iv({1, 0, 0})), ValidationError);
  CHECK_THROWS_AS(quotient_split(t, iv({0, 0, 0})), ValidationError);
  CHECK_THROWS_AS(quotient_split(t, iv({2, 2, 2})), ValidationError);
  CHECK_THROWS_AS(quotient_split(t, iv({1, 1})), DimensionError);
}

TEST_CASE("scalar quotient splitting on random primitive directions") {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> entry(-4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    int r = 1 + static_cast<int>(rng() % 4);
    IntVec v(r);
    for (int i = 0; i < r; ++i) v[i] = entry(rng);
    if (is_zero(v)) v[0] = 1;
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    for (Int& x : v) x /= g;

    ScalarQuotient q = quotient_split(TorusData::with_trivial_blocks(r), v);
    CHECK(q.p.mul(q.b) == IntMatrix::identity(r));
    IntVec e1 = zero_vec(r);
    e1[0] = 1;
    CHECK(q.p.apply(v) == e1);
  }
}
