#include "cbglue/gaugerep.hpp"

#include <algorithm>

namespace cbglue {

int GaugeTorus::coord(int vertex_index, int a) const {
  if (vertex_index < 0 || vertex_index >= static_cast<int>(quiver.vertices.size()))
    throw DimensionError("gauge torus: vertex index out of range");
  if (a < 0 || a >= dims[vertex_index])
    throw DimensionError("gauge torus: coordinate index out of range at vertex '" +
                         quiver.vertices[vertex_index] + "'");
  return offsets[vertex_index] + a;
}

int GaugeTorus::coord(const std::string& vertex, int a) const {
  int vi = quiver.vertex_index(vertex);
  if (vi < 0) throw ValidationError("gauge torus: unknown vertex '" + vertex + "'");
  return coord(vi, a);
}

GaugeTorus gauge_torus(const Quiver& q, const Dims& n) {
  q.validate();
  validate_dims(q, n);
  GaugeTorus g;
  g.quiver = q;
  g.dims = n;
  g.torus.rank = total_dim(n);
  g.torus.blocks.assign(n.begin(), n.end());
  g.offsets.resize(n.size());
  int off = 0;
  for (size_t i = 0; i < n.size(); ++i) {
    g.offsets[i] = off;
    off += n[i];
  }
  g.torus.validate();
  return g;
}

void WeightMultiset::add(const Character& xi, const Int& mult) {
  if (static_cast<int>(xi.size()) != ambient.rank)
    throw DimensionError("weight multiset: character rank mismatch");
  if (sgn(mult) <= 0) throw ValidationError("weight multiset: multiplicity must be positive");
  items.emplace_back(xi, mult);
}

void WeightMultiset::canonicalize() {
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Character, Int>> merged;
  for (auto& it : items) {
    if (!merged.empty() && merged.back().first == it.first)
      merged.back().second += it.second;
    else
      merged.push_back(std::move(it));
  }
  items = std::move(merged);
}

Int WeightMultiset::total_multiplicity() const {
  Int t = 0;
  for (const auto& it : items) t += it.second;
  return t;
}

WeightMultiset weights_of_quiver_rep(const GaugeTorus& g) {
  WeightMultiset w;
  w.ambient = g.torus;
  for (const Quiver::Edge& e : g.quiver.edges) {
    int si = g.quiver.vertex_index(e.src);
    int ti = g.quiver.vertex_index(e.dst);
    for (int a = 0; a < g.dims[si]; ++a) {
      for (int b = 0; b < g.dims[ti]; ++b) {
        Character xi = zero_vec(g.torus.rank);
        xi[g.coord(si, a)] -= 1;
        xi[g.coord(ti, b)] += 1;  // loops with a == b contribute the zero weight
        w.add(xi);
      }
    }
  }
  w.canonicalize();
  return w;
}

TorusData add_scalar_coordinate(const TorusData& t) {
  TorusData out = t;
  out.rank += 1;
  out.blocks.push_back(1);
  for (Cocharacter& v : out.central_quotients) v.push_back(0);
  out.validate();
  return out;
}

WeightMultiset add_scalar_flavor(const WeightMultiset& w) {
  if (w.scalar_flavor)
    throw ValidationError("add_scalar_flavor: multiset already carries the scalar coordinate");
  WeightMultiset out;
  out.ambient = add_scalar_coordinate(w.ambient);
  out.scalar_flavor = true;
  for (const auto& [xi, mult] : w.items) {
    Character ext = xi;
    ext.push_back(1);
    out.add(ext, mult);
  }
  out.canonicalize();
  return out;
}

TorusMap torus_map_of_vertex_identification(const QuiverMorphism& gamma, const Dims& target_dims) {
  gamma.validate();
  for (const std::string& v : gamma.target.vertices) {
    bool hit = false;
    for (const auto& [src, img] : gamma.vertex_map)
      if (img == v) {
        hit = true;
        break;
      }
    if (!hit)
      throw ValidationError("torus map: vertex '" + v + "' has no preimage, map is not diagonal");
  }
  GaugeTorus below = gauge_torus(gamma.target, target_dims);
  GaugeTorus above = gauge_torus(gamma.source, gamma.pull_back_dims(target_dims));

  TorusMap f;
  f.source = below.torus;
  f.target = above.torus;
  f.m = IntMatrix(above.torus.rank, below.torus.rank);
  for (size_t j = 0; j < gamma.source.vertices.size(); ++j) {
    int i = gamma.target.vertex_index(gamma.vertex_image(gamma.source.vertices[j]));
    for (int a = 0; a < above.dims[j]; ++a)
      f.m.at(above.coord(static_cast<int>(j), a), below.coord(i, a)) = 1;
  }
  f.validate();
  return f;
}

TorusMap torus_map_of_dismemberment(const QuiverMorphism& gamma, const Dims& target_dims) {
  std::string why;
  if (!is_dismemberment(gamma, &why))
    throw ValidationError("torus map: not a dismemberment: " + why);
  return torus_map_of_vertex_identification(gamma, target_dims);
}

TorusMap torus_map_of_explosion(const Explosion& x) {
  GaugeTorus whole = gauge_torus(x.source, x.dims);
  GaugeTorus fine = gauge_torus(x.exploded, x.exploded_dims);
  if (whole.torus.rank != fine.torus.rank)
    throw InternalError("torus map of explosion: ranks disagree");

  TorusMap f;
  f.source = fine.torus;
  f.target = whole.torus;
  f.m = IntMatrix(whole.torus.rank, fine.torus.rank);
  for (size_t vi = 0; vi < x.source.vertices.size(); ++vi) {
    const std::string& v = x.source.vertices[vi];
    auto it = x.fragments.find(v);
    if (it == x.fragments.end()) throw InternalError("torus map of explosion: missing fragments");
    for (const Explosion::Fragment& frag : it->second) {
      for (int a = 0; a < frag.size; ++a)
        f.m.at(whole.coord(static_cast<int>(vi), frag.offset + a), fine.coord(frag.vertex, a)) = 1;
    }
  }
  f.validate();
  return f;
}

ScalarQuotient quotient_by_scalar(const TorusData& t) {
  if (t.rank == 0)
    throw ValidationError("quotient_by_scalar: rank-zero torus has no scalar direction");
  return quotient_split(t, IntVec(static_cast<size_t>(t.rank), Int(1)));
}

WeightMultiset weights_to_quotient(const WeightMultiset& w, const ScalarQuotient& q) {
  if (!(w.ambient.rank == q.original.rank))
    throw DimensionError("weights_to_quotient: ambient rank mismatch");
  WeightMultiset out;
  out.ambient = q.quotient;
  out.scalar_flavor = w.scalar_flavor;
  for (const auto& [xi, mult] : w.items) out.add(q.char_to_quotient(xi), mult);
  out.canonicalize();
  return out;
}

}  // namespace cbglue
