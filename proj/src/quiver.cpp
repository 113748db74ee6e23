#include "cbglue/quiver.hpp"

#include <algorithm>
#include <set>

namespace cbglue {

void Quiver::validate() const {
  std::set<std::string> seen;
  for (const std::string& v : vertices) {
    if (v.empty()) throw ValidationError("quiver: empty vertex id");
    if (!seen.insert(v).second) throw ValidationError("quiver: duplicate vertex id '" + v + "'");
  }
  std::set<std::string> eseen;
  for (const Edge& e : edges) {
    if (e.id.empty()) throw ValidationError("quiver: empty edge id");
    if (!eseen.insert(e.id).second) throw ValidationError("quiver: duplicate edge id '" + e.id + "'");
    if (!has_vertex(e.src))
      throw ValidationError("quiver: edge '" + e.id + "' has unknown source '" + e.src + "'");
    if (!has_vertex(e.dst))
      throw ValidationError("quiver: edge '" + e.id + "' has unknown target '" + e.dst + "'");
  }
}

int Quiver::vertex_index(const std::string& id) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == id) return static_cast<int>(i);
  return -1;
}

int Quiver::edge_index(const std::string& id) const {
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].id == id) return static_cast<int>(i);
  return -1;
}

bool Quiver::has_loops() const {
  return std::any_of(edges.begin(), edges.end(), [&](const Edge& e) { return is_loop(e); });
}

bool Quiver::is_isolated(const std::string& vertex) const {
  for (const Edge& e : edges)
    if (e.src == vertex || e.dst == vertex) return false;
  return true;
}

std::vector<std::string> Quiver::isolated_vertices() const {
  std::vector<std::string> out;
  for (const std::string& v : vertices)
    if (is_isolated(v)) out.push_back(v);
  return out;
}

std::pair<int, int> Quiver::endpoint_pair(const Edge& e) const {
  int a = vertex_index(e.src);
  int b = vertex_index(e.dst);
  if (a < 0 || b < 0) throw ValidationError("quiver: edge with unknown endpoints");
  return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
}

void validate_dims(const Quiver& q, const Dims& n) {
  if (n.size() != q.vertices.size())
    throw DimensionError("dims: expected " + std::to_string(q.vertices.size()) + " entries, got " +
                         std::to_string(n.size()));
  for (size_t i = 0; i < n.size(); ++i)
    if (n[i] < 0)
      throw ValidationError("dims: vertex '" + q.vertices[i] + "' has negative dimension");
}

int total_dim(const Dims& n) {
  int t = 0;
  for (int x : n) t += x;
  return t;
}

void QuiverMorphism::validate() const {
  source.validate();
  target.validate();
  for (const std::string& v : source.vertices) {
    auto it = vertex_map.find(v);
    if (it == vertex_map.end())
      throw ValidationError("quiver map: vertex '" + v + "' has no image");
    if (!target.has_vertex(it->second))
      throw ValidationError("quiver map: vertex '" + v + "' maps to unknown '" + it->second + "'");
  }
  if (vertex_map.size() != source.vertices.size())
    throw ValidationError("quiver map: vertex_map mentions vertices outside the source");
  for (const Quiver::Edge& e : source.edges) {
    auto it = edge_map.find(e.id);
    if (it == edge_map.end()) throw ValidationError("quiver map: edge '" + e.id + "' has no image");
    int ti = target.edge_index(it->second);
    if (ti < 0)
      throw ValidationError("quiver map: edge '" + e.id + "' maps to unknown '" + it->second + "'");
    const Quiver::Edge& te = target.edges[ti];
    if (vertex_image(e.src) != te.src || vertex_image(e.dst) != te.dst)
      throw ValidationError("quiver map: edge '" + e.id + "' is not endpoint-compatible with '" +
                            te.id + "'");
  }
  if (edge_map.size() != source.edges.size())
    throw ValidationError("quiver map: edge_map mentions edges outside the source");
}

const std::string& QuiverMorphism::vertex_image(const std::string& v) const {
  auto it = vertex_map.find(v);
  if (it == vertex_map.end()) throw ValidationError("quiver map: vertex '" + v + "' has no image");
  return it->second;
}

const std::string& QuiverMorphism::edge_image(const std::string& e) const {
  auto it = edge_map.find(e);
  if (it == edge_map.end()) throw ValidationError("quiver map: edge '" + e + "' has no image");
  return it->second;
}

Dims QuiverMorphism::pull_back_dims(const Dims& target_dims) const {
  validate_dims(target, target_dims);
  Dims out(source.vertices.size(), 0);
  for (size_t i = 0; i < source.vertices.size(); ++i)
    out[i] = target_dims[target.vertex_index(vertex_image(source.vertices[i]))];
  return out;
}

bool is_dismemberment(const QuiverMorphism& f, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  f.validate();
  // Edge bijectivity.
  std::set<std::string> images;
  for (const Quiver::Edge& e : f.source.edges) {
    if (!images.insert(f.edge_image(e.id)).second)
      return fail("two edges share the image '" + f.edge_image(e.id) + "'");
  }
  if (images.size() != f.target.edges.size()) return fail("edge map is not onto the target edges");
  // Isolated vertices: bijection onto isolated target vertices.
  std::set<std::string> iso_images;
  std::set<std::string> target_iso;
  for (const std::string& v : f.target.isolated_vertices()) target_iso.insert(v);
  for (const std::string& v : f.source.isolated_vertices()) {
    const std::string& img = f.vertex_image(v);
    if (!target_iso.count(img))
      return fail("isolated vertex '" + v + "' maps to non-isolated '" + img + "'");
    if (!iso_images.insert(img).second)
      return fail("two isolated vertices share the image '" + img + "'");
  }
  if (iso_images.size() != target_iso.size())
    return fail("isolated vertices are not matched bijectively");
  if (why) why->clear();
  return true;
}

QuiverMorphism finest_dismemberment(const Quiver& q) {
  q.validate();
  QuiverMorphism f;
  f.target = q;

  // Component keys in a deterministic order: vertex pairs (i < j) by index,
  // then loop components by vertex index, then isolated copies.
  std::vector<std::pair<int, int>> pair_keys;
  std::vector<int> loop_keys;
  for (const Quiver::Edge& e : q.edges) {
    auto pr = q.endpoint_pair(e);
    if (pr.first == pr.second) {
      if (!std::count(loop_keys.begin(), loop_keys.end(), pr.first)) loop_keys.push_back(pr.first);
    } else if (!std::count(pair_keys.begin(), pair_keys.end(), pr)) {
      pair_keys.push_back(pr);
    }
  }
  std::sort(pair_keys.begin(), pair_keys.end());
  std::sort(loop_keys.begin(), loop_keys.end());

  auto pair_copy_id = [&](int v, const std::pair<int, int>& key) {
    return q.vertices[v] + "@" + q.vertices[key.first] + "~" + q.vertices[key.second];
  };
  auto loop_copy_id = [&](int v) { return q.vertices[v] + "@loop"; };

  for (const auto& key : pair_keys) {
    for (int v : {key.first, key.second}) {
      f.source.vertices.push_back(pair_copy_id(v, key));
      f.vertex_map[pair_copy_id(v, key)] = q.vertices[v];
    }
  }
  for (int v : loop_keys) {
    f.source.vertices.push_back(loop_copy_id(v));
    f.vertex_map[loop_copy_id(v)] = q.vertices[v];
  }
  for (const std::string& v : q.isolated_vertices()) {
    f.source.vertices.push_back(v);
    f.vertex_map[v] = v;
  }

  for (const Quiver::Edge& e : q.edges) {
    auto pr = q.endpoint_pair(e);
    Quiver::Edge copy;
    copy.id = e.id;
    if (pr.first == pr.second) {
      copy.src = loop_copy_id(pr.first);
      copy.dst = copy.src;
    } else {
      copy.src = pair_copy_id(q.vertex_index(e.src), pr);
      copy.dst = pair_copy_id(q.vertex_index(e.dst), pr);
    }
    f.source.edges.push_back(copy);
    f.edge_map[e.id] = e.id;
  }
  f.validate();
  return f;
}

ParallelLiftReport parallel_lifting_check(const QuiverMorphism& f) {
  f.validate();
  ParallelLiftReport rep;
  rep.loop_free = !f.target.has_loops();

  // Preimage of the edge bijection. validate() guaranteed images exist;
  // bijectivity is only assumed where is_dismemberment holds, so guard.
  std::map<std::string, std::string> lift;
  for (const Quiver::Edge& e : f.source.edges) lift[f.edge_image(e.id)] = e.id;

  const auto& edges = f.target.edges;
  for (size_t i = 0; i < edges.size(); ++i) {
    for (size_t j = i + 1; j < edges.size(); ++j) {
      if (f.target.endpoint_pair(edges[i]) != f.target.endpoint_pair(edges[j])) continue;
      bool same_orientation = edges[i].src == edges[j].src && edges[i].dst == edges[j].dst;
      if (!same_orientation && !f.target.is_loop(edges[i])) {
        rep.parallels_same_orientation = false;
        rep.orientation_violations.emplace_back(edges[i].id, edges[j].id);
      }
      auto li = lift.find(edges[i].id);
      auto lj = lift.find(edges[j].id);
      if (li == lift.end() || lj == lift.end()) continue;
      const Quiver::Edge& ei = f.source.edges[f.source.edge_index(li->second)];
      const Quiver::Edge& ej = f.source.edges[f.source.edge_index(lj->second)];
      if (f.source.endpoint_pair(ei) != f.source.endpoint_pair(ej)) {
        rep.lifts_parallel = false;
        rep.lifting_violations.emplace_back(edges[i].id, edges[j].id);
      }
    }
  }
  return rep;
}

Quiver normalize_parallel_orientation(const Quiver& q) {
  Quiver out = q;
  std::map<std::pair<int, int>, size_t> first_of_class;
  for (size_t i = 0; i < out.edges.size(); ++i) {
    Quiver::Edge& e = out.edges[i];
    if (out.is_loop(e)) continue;
    auto key = out.endpoint_pair(e);
    auto it = first_of_class.find(key);
    if (it == first_of_class.end()) {
      first_of_class[key] = i;
      continue;
    }
    const Quiver::Edge& head = out.edges[it->second];
    if (e.src != head.src) std::swap(e.src, e.dst);
  }
  return out;
}

QuiverMorphism normalize_parallel_orientation(const QuiverMorphism& f) {
  f.validate();
  QuiverMorphism out = f;
  Quiver normalized = normalize_parallel_orientation(f.target);
  for (size_t i = 0; i < normalized.edges.size(); ++i) {
    if (normalized.edges[i].src == f.target.edges[i].src) continue;
    // Edge i was flipped; flip every lift to keep the map well-formed.
    for (Quiver::Edge& se : out.source.edges)
      if (out.edge_map.at(se.id) == normalized.edges[i].id) std::swap(se.src, se.dst);
  }
  out.target = normalized;
  out.validate();
  return out;
}

Explosion explode(const Quiver& q, const Dims& n,
                  const std::map<std::string, std::vector<int>>& parts) {
  q.validate();
  validate_dims(q, n);
  if (q.has_loops()) throw UnsupportedError("explode: quiver must be loop-free");

  Explosion x;
  x.source = q;
  x.dims = n;
  x.parts = parts;

  for (const auto& [v, ps] : parts)
    if (!q.has_vertex(v)) throw ValidationError("explode: parts given for unknown vertex '" + v + "'");

  for (size_t vi = 0; vi < q.vertices.size(); ++vi) {
    const std::string& v = q.vertices[vi];
    auto it = parts.find(v);
    if (it == parts.end()) {
      // Untouched vertices keep their id so repeated explosions compose.
      x.exploded.vertices.push_back(v);
      x.exploded_dims.push_back(n[vi]);
      x.fragments[v].push_back({v, 0, n[vi]});
      continue;
    }
    const std::vector<int>& ps = it->second;
    if (ps.empty()) throw ValidationError("explode: vertex '" + v + "' has an empty part list");
    int sum = 0;
    for (int p : ps) {
      if (p < 0) throw ValidationError("explode: vertex '" + v + "' has a negative part");
      sum += p;
    }
    if (sum != n[vi])
      throw DimensionError("explode: parts at vertex '" + v + "' sum to " + std::to_string(sum) +
                           ", dimension is " + std::to_string(n[vi]));
    int offset = 0;
    for (size_t t = 0; t < ps.size(); ++t) {
      std::string id = "x" + v + "b" + std::to_string(t + 1);
      x.exploded.vertices.push_back(id);
      x.exploded_dims.push_back(ps[t]);
      x.fragments[v].push_back({id, offset, ps[t]});
      offset += ps[t];
    }
  }

  for (const Quiver::Edge& e : q.edges) {
    const auto& src_frags = x.fragments[e.src];
    const auto& dst_frags = x.fragments[e.dst];
    bool whole = !parts.count(e.src) && !parts.count(e.dst);
    for (size_t s = 0; s < src_frags.size(); ++s) {
      for (size_t t = 0; t < dst_frags.size(); ++t) {
        Quiver::Edge copy;
        copy.id = whole ? e.id : e.id + "@" + std::to_string(s + 1) + "." + std::to_string(t + 1);
        copy.src = src_frags[s].vertex;
        copy.dst = dst_frags[t].vertex;
        x.exploded.edges.push_back(copy);
      }
    }
  }
  x.exploded.validate();
  validate_dims(x.exploded, x.exploded_dims);
  return x;
}

}  // namespace cbglue
