#include "cbglue/lattice.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace cbglue {

bool is_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return sgn(x) == 0; });
}

IntVec zero_vec(int rank) { return IntVec(static_cast<size_t>(rank), Int(0)); }

std::string to_string(const IntVec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  os << ")";
  return os.str();
}

Int pairing(const Character& xi, const Cocharacter& mu) {
  if (xi.size() != mu.size())
    throw DimensionError("pairing: rank mismatch " + std::to_string(xi.size()) + " vs " +
                         std::to_string(mu.size()));
  Int acc = 0;
  for (size_t i = 0; i < xi.size(); ++i) acc += xi[i] * mu[i];
  return acc;
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntVec IntMatrix::apply(const IntVec& x) const {
  if (static_cast<int>(x.size()) != cols)
    throw DimensionError("matrix apply: expected " + std::to_string(cols) + " entries, got " +
                         std::to_string(x.size()));
  IntVec out(static_cast<size_t>(rows), Int(0));
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) out[r] += at(r, c) * x[c];
  return out;
}

IntVec IntMatrix::apply_transpose(const IntVec& x) const {
  if (static_cast<int>(x.size()) != rows)
    throw DimensionError("matrix apply_transpose: expected " + std::to_string(rows) +
                         " entries, got " + std::to_string(x.size()));
  IntVec out(static_cast<size_t>(cols), Int(0));
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) out[c] += at(r, c) * x[r];
  return out;
}

IntMatrix IntMatrix::mul(const IntMatrix& rhs) const {
  if (cols != rhs.rows) throw DimensionError("matrix mul: inner dimensions disagree");
  IntMatrix out(rows, rhs.cols);
  for (int r = 0; r < rows; ++r)
    for (int k = 0; k < cols; ++k) {
      if (sgn(at(r, k)) == 0) continue;
      for (int c = 0; c < rhs.cols; ++c) out.at(r, c) += at(r, k) * rhs.at(k, c);
    }
  return out;
}

int rank_over_Q(const IntMatrix& m) {
  std::vector<std::vector<Rat>> a(static_cast<size_t>(m.rows));
  for (int r = 0; r < m.rows; ++r) {
    a[r].reserve(m.cols);
    for (int c = 0; c < m.cols; ++c) a[r].emplace_back(m.at(r, c));
  }
  int rank = 0;
  for (int c = 0; c < m.cols && rank < m.rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < m.rows; ++r)
      if (sgn(a[r][c]) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    for (int r = rank + 1; r < m.rows; ++r) {
      if (sgn(a[r][c]) == 0) continue;
      Rat f = a[r][c] / a[rank][c];
      for (int j = c; j < m.cols; ++j) a[r][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

int rank_over_Q(const std::vector<IntVec>& rows) {
  if (rows.empty()) return 0;
  IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size()) throw DimensionError("rank_over_Q: ragged rows");
    for (size_t c = 0; c < rows[r].size(); ++c) m.at(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
  }
  return rank_over_Q(m);
}

bool in_span_over_Q(const std::vector<IntVec>& gens, const IntVec& b) {
  if (is_zero(b)) return true;
  std::vector<IntVec> ext = gens;
  ext.push_back(b);
  return rank_over_Q(gens) == rank_over_Q(ext);
}

TorusData TorusData::with_trivial_blocks(int rank) {
  TorusData t;
  t.rank = rank;
  t.blocks.assign(static_cast<size_t>(rank), 1);
  t.validate();
  return t;
}

TorusData TorusData::single_block(int rank) {
  TorusData t;
  t.rank = rank;
  t.blocks = {rank};
  t.validate();
  return t;
}

void TorusData::validate() const {
  if (rank < 0) throw ValidationError("torus rank must be nonnegative");
  int sum = 0;
  for (int b : blocks) {
    if (b < 0) throw ValidationError("torus block sizes must be nonnegative");
    sum += b;
  }
  if (sum != rank)
    throw DimensionError("torus blocks sum to " + std::to_string(sum) + ", rank is " +
                         std::to_string(rank));
  for (const Cocharacter& v : central_quotients) {
    if (static_cast<int>(v.size()) != rank)
      throw DimensionError("central quotient direction has wrong rank");
    if (is_zero(v)) throw ValidationError("central quotient direction must be nonzero");
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    if (g != 1) throw ValidationError("central quotient direction must be primitive");
  }
}

TorusMap TorusMap::identity(const TorusData& t) {
  TorusMap f;
  f.source = t;
  f.target = t;
  f.m = IntMatrix::identity(t.rank);
  return f;
}

void TorusMap::validate() const {
  source.validate();
  target.validate();
  if (m.rows != target.rank || m.cols != source.rank)
    throw DimensionError("torus map matrix is " + std::to_string(m.rows) + "x" +
                         std::to_string(m.cols) + ", expected " + std::to_string(target.rank) +
                         "x" + std::to_string(source.rank));
  // Well-definedness on quotient lattices: killed directions of the source
  // must land in the span of the killed directions of the target.
  for (const Cocharacter& v : source.central_quotients) {
    if (!in_span_over_Q(target.central_quotients, m.apply(v)))
      throw ValidationError("torus map does not descend: image of a quotiented direction " +
                            to_string(v) + " is not spanned by the target's quotiented directions");
  }
}

Cocharacter TorusMap::push(const Cocharacter& mu) const { return m.apply(mu); }

Character TorusMap::restrict_character(const Character& xi) const { return m.apply_transpose(xi); }

TorusMap TorusMap::compose(const TorusMap& inner) const {
  if (inner.target.rank != source.rank)
    throw DimensionError("torus map compose: middle ranks disagree");
  TorusMap out;
  out.source = inner.source;
  out.target = target;
  out.m = m.mul(inner.m);
  return out;
}

Proportionality proportional_over_Q(const IntVec& v1, const IntVec& v2) {
  if (v1.size() != v2.size()) throw DimensionError("proportional_over_Q: rank mismatch");
  Proportionality out;
  if (is_zero(v2)) {
    out.rank_le_one = true;  // [v1; 0] always has rank <= 1
    if (is_zero(v1)) {
      out.alpha = Rat(0);
      out.unconstrained = true;
    }
    return out;
  }
  size_t i = 0;
  while (sgn(v2[i]) == 0) ++i;
  for (size_t j = 0; j < v1.size(); ++j) {
    if (v1[j] * v2[i] != v1[i] * v2[j]) return out;  // a nonzero 2x2 minor
  }
  Rat alpha(v1[i], v2[i]);
  alpha.canonicalize();
  out.alpha = alpha;
  out.rank_le_one = true;
  return out;
}

std::optional<Cocharacter> sign_feasible(const Character& xi1, const Character& xi2) {
  if (xi1.size() != xi2.size()) throw DimensionError("sign_feasible: rank mismatch");
  const size_t r = xi1.size();
  // Independent case: the first nonzero 2x2 minor gives an adjugate witness
  // with <xi1,mu> = -d and <xi2,mu> = d.
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = i + 1; j < r; ++j) {
      Int d = xi1[i] * xi2[j] - xi1[j] * xi2[i];
      if (sgn(d) == 0) continue;
      Cocharacter mu(r, Int(0));
      mu[i] = -xi2[j] - xi1[j];
      mu[j] = xi2[i] + xi1[i];
      Int g = gcd(mu[i], mu[j]);
      if (g > 1) {
        mu[i] /= g;
        mu[j] /= g;
      }
      if (sgn(pairing(xi1, mu)) * sgn(pairing(xi2, mu)) >= 0)
        throw InternalError("sign_feasible: adjugate witness failed revalidation");
      return mu;
    }
  }
  // Dependent: feasible only for xi1 = c * xi2 with c < 0 and xi2 != 0.
  if (is_zero(xi1) || is_zero(xi2)) return std::nullopt;
  size_t i = 0;
  while (sgn(xi2[i]) == 0) ++i;
  if (sgn(xi1[i]) * sgn(xi2[i]) >= 0) return std::nullopt;
  Cocharacter mu(r, Int(0));
  mu[i] = 1;
  if (sgn(pairing(xi1, mu)) * sgn(pairing(xi2, mu)) >= 0)
    throw InternalError("sign_feasible: coordinate witness failed revalidation");
  return mu;
}

bool is_dominant(const TorusData& t, const Cocharacter& mu) {
  if (static_cast<int>(mu.size()) != t.rank) throw DimensionError("is_dominant: rank mismatch");
  size_t off = 0;
  for (int b : t.blocks) {
    for (int k = 1; k < b; ++k)
      if (mu[off + k - 1] < mu[off + k]) return false;
    off += static_cast<size_t>(b);
  }
  return true;
}

Cocharacter dominantize(const TorusData& t, const Cocharacter& mu) {
  if (static_cast<int>(mu.size()) != t.rank) throw DimensionError("dominantize: rank mismatch");
  Cocharacter out = mu;
  size_t off = 0;
  for (int b : t.blocks) {
    std::sort(out.begin() + off, out.begin() + off + b, [](const Int& x, const Int& y) { return x > y; });
    off += static_cast<size_t>(b);
  }
  return out;
}

ScalarQuotient quotient_split(const TorusData& t, const Cocharacter& v) {
  t.validate();
  if (static_cast<int>(v.size()) != t.rank) throw DimensionError("quotient_split: rank mismatch");
  if (t.rank == 0 || is_zero(v))
    throw ValidationError("quotient_split: direction must be a nonzero cocharacter");

  const int r = t.rank;
  IntMatrix p = IntMatrix::identity(r);
  IntMatrix b = IntMatrix::identity(r);
  IntVec w = v;
  for (int i = 1; i < r; ++i) {
    if (sgn(w[i]) == 0) continue;
    Int g, s, tt;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), tt.get_mpz_t(), w[0].get_mpz_t(), w[i].get_mpz_t());
    Int u = w[0] / g;
    Int q = w[i] / g;
    // Rows 0 and i of p via E = [[s, tt], [-q, u]], det(E) = 1; columns 0
    // and i of b via E^{-1} = [[u, -tt], [q, s]].
    for (int c = 0; c < r; ++c) {
      Int p0 = p.at(0, c), pi = p.at(i, c);
      p.at(0, c) = s * p0 + tt * pi;
      p.at(i, c) = -q * p0 + u * pi;
    }
    for (int rr = 0; rr < r; ++rr) {
      Int b0 = b.at(rr, 0), bi = b.at(rr, i);
      b.at(rr, 0) = u * b0 + q * bi;
      b.at(rr, i) = -tt * b0 + s * bi;
    }
    w[0] = g;
    w[i] = 0;
  }
  if (sgn(w[0]) < 0) {
    for (int c = 0; c < r; ++c) p.at(0, c) = -p.at(0, c);
    for (int rr = 0; rr < r; ++rr) b.at(rr, 0) = -b.at(rr, 0);
    w[0] = -w[0];
  }
  if (w[0] != 1)
    throw ValidationError("quotient_split: direction must be primitive (content " +
                          w[0].get_str() + ")");
  IntVec check = p.apply(v);
  if (check[0] != 1 || !std::all_of(check.begin() + 1, check.end(), [](const Int& x) { return sgn(x) == 0; }))
    throw InternalError("quotient_split: unimodular completion failed revalidation");

  ScalarQuotient q;
  q.original = t;
  q.v = v;
  q.quotient = TorusData::with_trivial_blocks(r - 1);
  q.p = std::move(p);
  q.b = std::move(b);
  return q;
}

Cocharacter ScalarQuotient::cochar_to_quotient(const Cocharacter& mu) const {
  IntVec full = p.apply(mu);
  return Cocharacter(full.begin() + 1, full.end());
}

Cocharacter ScalarQuotient::cochar_from_quotient(const Cocharacter& eta) const {
  if (static_cast<int>(eta.size()) != quotient.rank)
    throw DimensionError("cochar_from_quotient: rank mismatch");
  IntVec padded = zero_vec(original.rank);
  std::copy(eta.begin(), eta.end(), padded.begin() + 1);
  return b.apply(padded);
}

Character ScalarQuotient::char_to_quotient(const Character& xi) const {
  if (sgn(pairing(xi, v)) != 0)
    throw ValidationError("char_to_quotient: character does not vanish on the quotient direction");
  IntVec full = b.apply_transpose(xi);
  if (sgn(full[0]) != 0) throw InternalError("char_to_quotient: splitting failed revalidation");
  return Character(full.begin() + 1, full.end());
}

Character ScalarQuotient::char_from_quotient(const Character& eta) const {
  if (static_cast<int>(eta.size()) != quotient.rank)
    throw DimensionError("char_from_quotient: rank mismatch");
  IntVec padded = zero_vec(original.rank);
  std::copy(eta.begin(), eta.end(), padded.begin() + 1);
  return p.apply_transpose(padded);
}

}  // namespace cbglue
