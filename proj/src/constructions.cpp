#include "cbglue/constructions.hpp"

namespace cbglue {

namespace {

std::string chain_id(int t) { return "c" + std::to_string(t); }
std::string leg_id(int k, int m) { return "L" + std::to_string(k) + "v" + std::to_string(m); }

}  // namespace

int Partition::sum() const {
  int s = 0;
  for (int p : parts) s += p;
  return s;
}

void Partition::validate() const {
  if (parts.empty()) throw ValidationError("partition: needs at least one part");
  for (int p : parts)
    if (p <= 0) throw ValidationError("partition: parts must be positive");
}

BuiltQuiver build_chain(int n) {
  if (n < 1) throw ValidationError("chain: length must be positive");
  BuiltQuiver out;
  for (int t = 1; t <= n; ++t) {
    out.quiver.vertices.push_back(chain_id(t));
    out.dims.push_back(t);
  }
  for (int t = 1; t < n; ++t)
    out.quiver.edges.push_back({"e" + chain_id(t), chain_id(t), chain_id(t + 1)});
  out.quiver.validate();
  return out;
}

BuiltQuiver build_a_legs(const Partition& p) {
  p.validate();
  BuiltQuiver out;
  for (size_t k = 1; k <= p.parts.size(); ++k) {
    int mk = p.parts[k - 1];
    for (int m = 1; m <= mk; ++m) {
      out.quiver.vertices.push_back(leg_id(static_cast<int>(k), m));
      out.dims.push_back(mk - m + 1);
    }
    for (int m = 1; m < mk; ++m)
      out.quiver.edges.push_back({"e" + leg_id(static_cast<int>(k), m),
                                  leg_id(static_cast<int>(k), m + 1),
                                  leg_id(static_cast<int>(k), m)});
  }
  out.quiver.validate();
  return out;
}

BuiltQuiver build_partition_quiver(const Partition& p) {
  p.validate();
  int n = p.sum();
  if (n < 2) throw UnsupportedError("partition quiver: total must be at least 2");

  BuiltQuiver out;
  for (int t = 1; t <= n - 1; ++t) {
    out.quiver.vertices.push_back(chain_id(t));
    out.dims.push_back(t);
  }
  for (int t = 1; t <= n - 2; ++t)
    out.quiver.edges.push_back({"e" + chain_id(t), chain_id(t), chain_id(t + 1)});

  BuiltQuiver legs = build_a_legs(p);
  out.quiver.vertices.insert(out.quiver.vertices.end(), legs.quiver.vertices.begin(),
                             legs.quiver.vertices.end());
  out.dims.insert(out.dims.end(), legs.dims.begin(), legs.dims.end());
  for (size_t k = 1; k <= p.parts.size(); ++k)
    out.quiver.edges.push_back(
        {"eL" + std::to_string(k), chain_id(n - 1), leg_id(static_cast<int>(k), 1)});
  out.quiver.edges.insert(out.quiver.edges.end(), legs.quiver.edges.begin(),
                          legs.quiver.edges.end());
  out.quiver.validate();
  return out;
}

void Puncture::validate() const {
  if (parts.empty()) throw ValidationError("puncture: needs at least one part");
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] <= 0) throw ValidationError("puncture: parts must be positive");
    if (i > 0 && parts[i] > parts[i - 1])
      throw ValidationError("puncture: parts must be weakly decreasing");
  }
}

BuiltQuiver build_comet(int genus, int n, const std::vector<Puncture>& punctures) {
  if (genus < 0) throw ValidationError("comet: genus must be nonnegative");
  if (n < 1) throw ValidationError("comet: central dimension must be positive");

  BuiltQuiver out;
  out.quiver.vertices.push_back("c");
  out.dims.push_back(n);
  for (int t = 1; t <= genus; ++t) out.quiver.edges.push_back({"loop" + std::to_string(t), "c", "c"});

  for (size_t k = 1; k <= punctures.size(); ++k) {
    const Puncture& h = punctures[k - 1];
    h.validate();
    int total = 0;
    for (int x : h.parts) total += x;
    if (total != n)
      throw ValidationError("comet: puncture " + std::to_string(k) + " sums to " +
                            std::to_string(total) + ", central dimension is " + std::to_string(n));

    // Step m carries h_{m+1} + ... + h_k; positive exactly for m < #parts.
    int steps = static_cast<int>(h.parts.size()) - 1;
    int dim = n;
    for (int m = 1; m <= steps; ++m) {
      dim -= h.parts[m - 1];
      out.quiver.vertices.push_back(leg_id(static_cast<int>(k), m));
      out.dims.push_back(dim);
    }
    if (steps >= 1)
      out.quiver.edges.push_back(
          {"eL" + std::to_string(k), "c", leg_id(static_cast<int>(k), 1)});
    for (int m = 1; m < steps; ++m)
      out.quiver.edges.push_back({"e" + leg_id(static_cast<int>(k), m),
                                  leg_id(static_cast<int>(k), m + 1),
                                  leg_id(static_cast<int>(k), m)});
  }
  out.quiver.validate();
  return out;
}

PartitionGluing partition_gluing_map(const Partition& p) {
  p.validate();
  int n = p.sum();
  if (n < 2) throw UnsupportedError("partition gluing: total must be at least 2");
  int l = static_cast<int>(p.parts.size());

  PartitionGluing out;
  out.glued = build_partition_quiver(p);

  BuiltQuiver chain = build_chain(n);
  BuiltQuiver legs = build_a_legs(p);
  out.pieces = chain;
  out.pieces.quiver.vertices.insert(out.pieces.quiver.vertices.end(),
                                    legs.quiver.vertices.begin(), legs.quiver.vertices.end());
  out.pieces.quiver.edges.insert(out.pieces.quiver.edges.end(), legs.quiver.edges.begin(),
                                 legs.quiver.edges.end());
  out.pieces.dims.insert(out.pieces.dims.end(), legs.dims.begin(), legs.dims.end());
  out.pieces.quiver.validate();

  out.explosion =
      explode(out.pieces.quiver, out.pieces.dims, {{chain_id(n), p.parts}});

  QuiverMorphism& gamma = out.morphism;
  gamma.source = out.explosion.exploded;
  gamma.target = out.glued.quiver;
  for (int t = 1; t <= n - 1; ++t) gamma.vertex_map[chain_id(t)] = chain_id(t);
  for (int k = 1; k <= l; ++k) {
    // Fragment k of the exploded chain end lands on the head of leg k.
    gamma.vertex_map["x" + chain_id(n) + "b" + std::to_string(k)] = leg_id(k, 1);
    for (int m = 1; m <= p.parts[k - 1]; ++m) gamma.vertex_map[leg_id(k, m)] = leg_id(k, m);
  }
  for (int t = 1; t <= n - 2; ++t) gamma.edge_map["e" + chain_id(t)] = "e" + chain_id(t);
  for (int k = 1; k <= l; ++k) {
    gamma.edge_map["e" + chain_id(n - 1) + "@1." + std::to_string(k)] = "eL" + std::to_string(k);
    for (int m = 1; m < p.parts[k - 1]; ++m)
      gamma.edge_map["e" + leg_id(k, m)] = "e" + leg_id(k, m);
  }
  gamma.validate();

  out.identification = torus_map_of_vertex_identification(gamma, out.glued.dims);
  out.composite = torus_map_of_explosion(out.explosion).compose(out.identification);
  return out;
}

}  // namespace cbglue
