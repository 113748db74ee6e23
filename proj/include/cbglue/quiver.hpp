#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cbglue/errors.hpp"

namespace cbglue {

// Vertices and edges are identified by strings. Declaration order is kept
// and is what fixes coordinate order downstream.
struct Quiver {
  struct Edge {
    std::string id;
    std::string src;
    std::string dst;
    bool operator==(const Edge& o) const { return id == o.id && src == o.src && dst == o.dst; }
  };

  std::vector<std::string> vertices;
  std::vector<Edge> edges;

  void validate() const;

  int vertex_index(const std::string& id) const;  // -1 when absent
  int edge_index(const std::string& id) const;
  bool has_vertex(const std::string& id) const { return vertex_index(id) >= 0; }
  bool is_loop(const Edge& e) const { return e.src == e.dst; }
  bool has_loops() const;
  bool is_isolated(const std::string& vertex) const;
  std::vector<std::string> isolated_vertices() const;

  // Unordered endpoint pair, sorted by vertex declaration order.
  std::pair<int, int> endpoint_pair(const Edge& e) const;

  bool operator==(const Quiver& o) const { return vertices == o.vertices && edges == o.edges; }
};

// Dimension vector aligned with Quiver::vertices.
using Dims = std::vector<int>;

void validate_dims(const Quiver& q, const Dims& n);
int total_dim(const Dims& n);

// A map of quivers gamma : source -> target (the source is the dismembered
// quiver). Vertices map to vertices, edges to edges, endpoints compatibly.
struct QuiverMorphism {
  Quiver source;
  Quiver target;
  std::map<std::string, std::string> vertex_map;
  std::map<std::string, std::string> edge_map;

  void validate() const;
  const std::string& vertex_image(const std::string& v) const;
  const std::string& edge_image(const std::string& e) const;

  // Dimensions on the source pulled back through the vertex map.
  Dims pull_back_dims(const Dims& target_dims) const;
};

// A dismemberment is a quiver map bijective on edges and bijective from
// isolated source vertices onto isolated target vertices.
bool is_dismemberment(const QuiverMorphism& f, std::string* why = nullptr);

// One component per unordered vertex pair joined by an edge; loops stay with
// a per-vertex component; isolated vertices are copied through unchanged.
QuiverMorphism finest_dismemberment(const Quiver& q);

struct ParallelLiftReport {
  bool loop_free = true;
  bool parallels_same_orientation = true;
  bool lifts_parallel = true;
  // Edge-id pairs violating either the orientation or the lifting condition.
  std::vector<std::pair<std::string, std::string>> orientation_violations;
  std::vector<std::pair<std::string, std::string>> lifting_violations;

  bool hypotheses_hold() const { return loop_free && parallels_same_orientation && lifts_parallel; }
};

// Checks, for every parallel edge class of the target (same endpoints in
// either orientation), that the class is consistently oriented and that its
// lifts are again parallel in the source.
ParallelLiftReport parallel_lifting_check(const QuiverMorphism& f);

// Flips edges so each parallel class of the target shares the orientation of
// its first declared edge; lifted edges are flipped alongside. Loops are
// left alone. Purely a preprocessing step: deciders never flip edges.
QuiverMorphism normalize_parallel_orientation(const QuiverMorphism& f);
Quiver normalize_parallel_orientation(const Quiver& q);

// An explosion replaces vertex i by l_i vertices carrying an ordered
// partition of n_i, and each edge by one copy per pair of fragments.
// Fragment t of a split vertex i is named x{i}b{t} and owns a consecutive
// block of the original coordinates. Vertices absent from parts keep their
// id (one whole fragment), and an edge keeps its id when neither endpoint
// was split, so partial explosions leave the untouched region alone.
struct Explosion {
  Quiver source;  // Q, loop-free
  Dims dims;      // n on Q
  std::map<std::string, std::vector<int>> parts;  // per vertex, sums to n_i

  Quiver exploded;     // derived
  Dims exploded_dims;  // derived, aligned with exploded.vertices

  struct Fragment {
    std::string vertex;  // exploded vertex id
    int offset;          // 0-based start inside the original vertex block
    int size;
  };
  std::map<std::string, std::vector<Fragment>> fragments;  // per original vertex
};

Explosion explode(const Quiver& q, const Dims& n,
                  const std::map<std::string, std::vector<int>>& parts);

}  // namespace cbglue
