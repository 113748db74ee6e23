#include "cbglue/euler.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cbglue {

namespace {

// Sums in the boxed-separation scan stay exact; the set size is capped so a
// pathological pair fails loudly instead of thrashing.
constexpr size_t kSeparationSetCap = size_t(1) << 22;
constexpr size_t kMaxReportedFailures = 50;

Int gcd_of(const IntVec& v) {
  Int g = 0;
  for (const Int& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

// Canonical representative of the line through v: primitive, first nonzero
// entry positive. Two nonzero vectors are Q-proportional iff they agree here.
IntVec primitive_line_rep(const IntVec& v) {
  IntVec out = v;
  Int g = gcd_of(out);
  if (sgn(g) != 0)
    for (Int& x : out) x /= g;
  for (const Int& x : out) {
    if (sgn(x) == 0) continue;
    if (sgn(x) < 0)
      for (Int& y : out) y = -y;
    break;
  }
  return out;
}

}  // namespace

void FactorProduct::canonicalize() {
  std::sort(factors.begin(), factors.end());
  std::vector<std::pair<Character, Int>> merged;
  for (auto& f : factors) {
    if (sgn(f.second) <= 0) throw ValidationError("factor product: multiplicity must be positive");
    if (!merged.empty() && merged.back().first == f.first)
      merged.back().second += f.second;
    else
      merged.push_back(std::move(f));
  }
  factors = std::move(merged);
  for (const auto& f : factors)
    if (is_zero(f.first)) vanishes = true;
}

Int FactorProduct::total_multiplicity() const {
  Int t = 0;
  for (const auto& f : factors) t += f.second;
  return t;
}

EulerFactors euler_factors(const WeightMultiset& w, const Cocharacter& lambda, FactorKind kind) {
  if (static_cast<int>(lambda.size()) != w.ambient.rank)
    throw DimensionError("euler_factors: cocharacter rank mismatch");
  EulerFactors out;
  out.left.kind = kind;
  out.right.kind = kind;
  for (const auto& [xi, mult] : w.items) {
    Int v = pairing(xi, lambda);
    if (sgn(v) == 0) continue;
    Int m = abs(v) * mult;
    (sgn(v) < 0 ? out.left : out.right).factors.emplace_back(xi, m);
  }
  out.left.canonicalize();
  out.right.canonicalize();
  return out;
}

FactorProduct restrict_factors(const FactorProduct& phi, const TorusMap& restriction) {
  FactorProduct out;
  out.kind = phi.kind;
  out.vanishes = phi.vanishes;
  for (const auto& [xi, m] : phi.factors) {
    if (static_cast<int>(xi.size()) != restriction.target.rank)
      throw DimensionError("restrict_factors: factor rank mismatch");
    out.factors.emplace_back(restriction.restrict_character(xi), m);
  }
  out.canonicalize();
  return out;
}

LambdaVerdict lambda_verdict(const WeightMultiset& w, const Cocharacter& lambda,
                             const TorusMap& restriction, FactorKind kind) {
  if (restriction.target.rank != w.ambient.rank)
    throw DimensionError("lambda_verdict: restriction target does not match the weights");
  LambdaVerdict out;
  out.lambda = lambda;

  EulerFactors phi = euler_factors(w, lambda, kind);
  out.restricted.left = restrict_factors(phi.left, restriction);
  out.restricted.right = restrict_factors(phi.right, restriction);
  out.left_nonzero = !out.restricted.left.vanishes;
  out.right_nonzero = !out.restricted.right.vanishes;

  // Scan contributing weight pairs, one from each side, in support order.
  for (const auto& [xi1, m1] : w.items) {
    (void)m1;
    if (out.common_factor) break;
    if (sgn(pairing(xi1, lambda)) >= 0) continue;
    Character r1 = restriction.restrict_character(xi1);
    if (is_zero(r1)) continue;
    for (const auto& [xi2, m2] : w.items) {
      (void)m2;
      if (sgn(pairing(xi2, lambda)) <= 0) continue;
      Character r2 = restriction.restrict_character(xi2);
      if (is_zero(r2)) continue;
      if (proportional_over_Q(r1, r2).rank_le_one) {
        out.common_factor = std::make_pair(xi1, xi2);
        break;
      }
    }
  }

  out.exact = out.left_nonzero && out.right_nonzero && !out.common_factor;
  return out;
}

void for_each_dominant(const TorusData& t, int bound,
                       const std::function<bool(const Cocharacter&)>& fn) {
  t.validate();
  if (bound < 0) throw ValidationError("dominant enumeration: bound must be nonnegative");

  std::vector<bool> opens(t.rank, false);
  int pos = 0;
  for (int b : t.blocks) {
    if (b > 0) opens[pos] = true;
    pos += b;
  }

  Cocharacter cur(t.rank);
  // Ascending values at every position give ascending lexicographic order on
  // the whole vector; within a block each entry is capped by its predecessor.
  std::function<bool(int)> rec = [&](int k) -> bool {
    if (k == t.rank) return fn(cur);
    Int hi = opens[k] ? Int(bound) : cur[k - 1];
    for (Int v = -bound; v <= hi; ++v) {
      cur[k] = v;
      if (!rec(k + 1)) return false;
    }
    return true;
  };
  rec(0);
}

std::vector<Cocharacter> enumerate_dominant(const TorusData& t, int bound) {
  std::vector<Cocharacter> out;
  for_each_dominant(t, bound, [&](const Cocharacter& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

Int count_dominant(const TorusData& t, int bound) {
  t.validate();
  if (bound < 0) throw ValidationError("dominant enumeration: bound must be nonnegative");
  Int total = 1;
  for (int b : t.blocks) {
    if (b <= 0) continue;
    // Weakly decreasing b-tuples over 2*bound+1 values: one per multiset.
    Int c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(2 * bound + b),
                 static_cast<unsigned long>(b));
    total *= c;
  }
  return total;
}

namespace {

// Does some lambda with entries in [-bound, bound] separate the signs of
// <g1, lambda> and <g2, lambda>? Independent of sign_feasible on purpose:
// walks the exact set of reachable sum pairs coordinate by coordinate.
bool boxed_separation(const IntVec& g1, const IntVec& g2, int bound) {
  std::set<std::pair<Int, Int>> reach;
  reach.emplace(0, 0);
  for (size_t c = 0; c < g1.size(); ++c) {
    if (sgn(g1[c]) == 0 && sgn(g2[c]) == 0) continue;
    std::set<std::pair<Int, Int>> next;
    for (const auto& [s1, s2] : reach) {
      for (int x = -bound; x <= bound; ++x) {
        next.emplace(s1 + x * g1[c], s2 + x * g2[c]);
        if (next.size() > kSeparationSetCap)
          throw UnsupportedError("cross_check: boxed separation scan exceeded the size cap");
      }
    }
    reach = std::move(next);
  }
  for (const auto& [s1, s2] : reach)
    if (sgn(s1) * sgn(s2) < 0) return true;
  return false;
}

// Exactness of one lambda from precomputed per-weight data, avoiding the
// factor-product plumbing inside the enumeration loop. Agrees with
// lambda_verdict(...).exact by construction (and by test).
struct FastExactness {
  const std::vector<Character>& pulled;  // gauge pullbacks, per support index
  std::vector<int> line_class;           // -1 when the restriction is zero
  size_t classes = 0;

  // long long fast path when every pairing provably fits
  bool use_ll = false;
  std::vector<std::vector<long long>> pulled_ll;

  FastExactness(const GluabilityProblem& p, const std::vector<Character>& pulled_in,
                const std::vector<Character>& restricted, int bound)
      : pulled(pulled_in) {
    std::map<IntVec, int> seen;
    line_class.resize(restricted.size(), -1);
    for (size_t i = 0; i < restricted.size(); ++i) {
      if (is_zero(restricted[i])) continue;
      IntVec rep = primitive_line_rep(restricted[i]);
      auto [it, inserted] = seen.emplace(std::move(rep), static_cast<int>(classes));
      if (inserted) ++classes;
      line_class[i] = it->second;
    }

    Int largest = 0;
    for (const Character& g : pulled)
      for (const Int& x : g) largest = std::max(largest, Int(abs(x)));
    Int worst = largest * bound * Int(p.gauge.source.rank);
    if (worst < Int("4611686018427387904")) {  // 2^62
      use_ll = true;
      pulled_ll.reserve(pulled.size());
      for (const Character& g : pulled) {
        std::vector<long long> row;
        row.reserve(g.size());
        for (const Int& x : g) row.push_back(x.get_si());
        pulled_ll.push_back(std::move(row));
      }
    }
  }

  bool exact(const Cocharacter& lam, const std::vector<long long>& lam_ll,
             std::vector<char>& neg, std::vector<char>& pos) const {
    std::fill(neg.begin(), neg.end(), 0);
    std::fill(pos.begin(), pos.end(), 0);
    for (size_t i = 0; i < pulled.size(); ++i) {
      int s;
      if (use_ll) {
        long long acc = 0;
        const auto& row = pulled_ll[i];
        for (size_t c = 0; c < row.size(); ++c) acc += row[c] * lam_ll[c];
        s = acc < 0 ? -1 : acc > 0 ? 1 : 0;
      } else {
        s = sgn(pairing(pulled[i], lam));
      }
      if (s == 0) continue;
      if (line_class[i] < 0) return false;  // a contributing factor restricts to zero
      (s < 0 ? neg : pos)[line_class[i]] = 1;
    }
    for (size_t k = 0; k < classes; ++k)
      if (neg[k] && pos[k]) return false;  // shared irreducible factor
    return true;
  }
};

}  // namespace

CrossCheckReport cross_check(const GluabilityProblem& p, int bound, FactorKind kind,
                             long literal_cap) {
  p.validate();
  if (bound < 1) throw ValidationError("cross_check: bound must be at least 1");

  GluabilityReport rep = is_gluable(p);
  CrossCheckReport out;
  out.gluable = rep.gluable;
  out.dominant_count = count_dominant(p.gauge.source, bound);

  if (!rep.gluable) {
    // Each witness cocharacter puts its weight pair on opposite sides, so
    // exactness must fail right at that lambda.
    for (const GluabilityWitness& w : rep.witnesses) {
      ++out.witnesses_checked;
      LambdaVerdict v = lambda_verdict(p.weights, w.mu, p.restriction, kind);
      if (v.exact)
        out.failures.push_back(
            {"witness cocharacter yields an exact lambda despite the negative verdict", w.mu});
      if (out.failures.size() >= kMaxReportedFailures) break;
    }
    out.consistent = out.failures.empty();
    return out;
  }

  const auto& items = p.weights.items;
  std::vector<Character> restricted(items.size()), pulled(items.size());
  for (size_t i = 0; i < items.size(); ++i) {
    restricted[i] = p.restriction.restrict_character(items[i].first);
    pulled[i] = p.gauge.restrict_character(items[i].first);
  }

  // A weight pairing nontrivially with the gauge torus while restricting to
  // zero makes one side vanish at a suitable dominant lambda.
  for (size_t i = 0; i < items.size(); ++i) {
    if (is_zero(restricted[i]) && !is_zero(pulled[i]))
      out.failures.push_back({"weight " + to_string(items[i].first) +
                                  " restricts to zero but pairs nontrivially with the gauge torus",
                              {}});
  }

  // Complete scan: a common factor at any lambda needs a support pair with
  // nonzero proportional restrictions split across the two sides, and the
  // boxed walk decides whether any lambda up to the bound splits it.
  for (size_t i = 0; i < items.size() && out.failures.size() < kMaxReportedFailures; ++i) {
    if (is_zero(restricted[i])) continue;
    for (size_t j = i; j < items.size(); ++j) {
      if (is_zero(restricted[j])) continue;
      if (!proportional_over_Q(restricted[i], restricted[j]).rank_le_one) continue;
      ++out.pairs_scanned;
      if (boxed_separation(pulled[i], pulled[j], bound))
        out.failures.push_back({"separating cocharacter found for weights " +
                                    to_string(items[i].first) + ", " + to_string(items[j].first) +
                                    " despite the affirmative verdict",
                                {}});
    }
  }

  if (literal_cap >= 0 && out.dominant_count <= literal_cap) {
    FastExactness fast(p, pulled, restricted, bound);
    std::vector<char> neg(fast.classes, 0), pos(fast.classes, 0);
    std::vector<long long> lam_ll(p.gauge.source.rank, 0);
    for_each_dominant(p.gauge.source, bound, [&](const Cocharacter& lam) {
      ++out.lambdas_enumerated;
      if (fast.use_ll)
        for (size_t c = 0; c < lam.size(); ++c) lam_ll[c] = lam[c].get_si();
      if (!fast.exact(lam, lam_ll, neg, pos))
        out.failures.push_back({"dominant cocharacter is not exact", p.gauge.push(lam)});
      return out.failures.size() < kMaxReportedFailures;
    });
  } else {
    out.enumeration_truncated = true;
  }

  out.consistent = out.failures.empty();
  return out;
}

}  // namespace cbglue
