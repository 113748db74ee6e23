#include "cbglue/io.hpp"

#include <fstream>

namespace cbglue {

using nlohmann::json;

namespace {

void require_keys(const json& j, const char* where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ValidationError(std::string(where) + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) throw ValidationError(std::string(where) + ": unknown key '" + key + "'");
  }
}

const json& require(const json& j, const char* where, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(std::string(where) + ": missing key '" + key + "'");
  return *it;
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw ValidationError(where + ": expected a string");
  return j.get<std::string>();
}

std::map<std::string, std::string> string_map_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object of strings");
  std::map<std::string, std::string> out;
  for (const auto& [key, value] : j.items()) out[key] = as_string(value, where + "." + key);
  return out;
}

json string_map_to_json(const std::map<std::string, std::string>& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[k] = v;
  return out;
}

}  // namespace

json quiver_to_json(const Quiver& q) {
  json out;
  out["vertices"] = q.vertices;
  json edges = json::array();
  for (const Quiver::Edge& e : q.edges)
    edges.push_back({{"id", e.id}, {"src", e.src}, {"dst", e.dst}});
  out["edges"] = edges;
  return out;
}

Quiver quiver_from_json(const json& j) {
  require_keys(j, "quiver", {"vertices", "edges"});
  Quiver q;
  const json& verts = require(j, "quiver", "vertices");
  if (!verts.is_array()) throw ValidationError("quiver.vertices: expected an array");
  for (const json& v : verts) q.vertices.push_back(as_string(v, "quiver.vertices"));
  const json& edges = require(j, "quiver", "edges");
  if (!edges.is_array()) throw ValidationError("quiver.edges: expected an array");
  for (const json& e : edges) {
    require_keys(e, "quiver edge", {"id", "src", "dst"});
    q.edges.push_back({as_string(require(e, "edge", "id"), "edge.id"),
                       as_string(require(e, "edge", "src"), "edge.src"),
                       as_string(require(e, "edge", "dst"), "edge.dst")});
  }
  q.validate();
  return q;
}

json problem_to_json(const ProblemFile& f) {
  json out;
  out["quiver"] = quiver_to_json(f.quiver);
  json dims = json::object();
  for (size_t i = 0; i < f.quiver.vertices.size(); ++i) dims[f.quiver.vertices[i]] = f.dims[i];
  out["dims"] = dims;
  if (f.dismemberment) {
    json d;
    d["quiver"] = quiver_to_json(f.dismemberment->quiver);
    d["vertex_map"] = string_map_to_json(f.dismemberment->vertex_map);
    d["edge_map"] = string_map_to_json(f.dismemberment->edge_map);
    out["dismemberment"] = d;
  }
  if (f.explosion) {
    json parts = json::object();
    for (const auto& [v, ps] : f.explosion->parts) parts[v] = ps;
    out["explosion"] = {{"parts", parts}};
  }
  json flags = json::object();
  if (f.flags.scalar_flavor) flags["scalar_flavor"] = true;
  if (f.flags.quotient_scalar) flags["quotient_scalar"] = true;
  if (f.flags.normalize_orientation) flags["normalize_orientation"] = true;
  if (!flags.empty()) out["flags"] = flags;
  return out;
}

ProblemFile problem_from_json(const json& j) {
  require_keys(j, "problem", {"quiver", "dims", "dismemberment", "explosion", "flags"});
  ProblemFile f;
  f.quiver = quiver_from_json(require(j, "problem", "quiver"));

  const json& dims = require(j, "problem", "dims");
  if (!dims.is_object()) throw ValidationError("dims: expected an object keyed by vertex id");
  f.dims.assign(f.quiver.vertices.size(), 0);
  for (const auto& [key, value] : dims.items()) {
    int vi = f.quiver.vertex_index(key);
    if (vi < 0) throw ValidationError("dims: unknown vertex '" + key + "'");
    if (!value.is_number_integer() || value.get<long long>() < 0 ||
        value.get<long long>() > 1000000)
      throw ValidationError("dims: vertex '" + key + "' needs a nonnegative integer");
    f.dims[vi] = value.get<int>();
  }
  if (dims.size() != f.quiver.vertices.size())
    throw ValidationError("dims: every vertex needs an entry");

  if (auto it = j.find("dismemberment"); it != j.end()) {
    require_keys(*it, "dismemberment", {"quiver", "vertex_map", "edge_map"});
    DismembermentBlock d;
    d.quiver = quiver_from_json(require(*it, "dismemberment", "quiver"));
    d.vertex_map =
        string_map_from_json(require(*it, "dismemberment", "vertex_map"), "vertex_map");
    d.edge_map = string_map_from_json(require(*it, "dismemberment", "edge_map"), "edge_map");
    f.dismemberment = std::move(d);
  }

  if (auto it = j.find("explosion"); it != j.end()) {
    require_keys(*it, "explosion", {"parts"});
    ExplosionBlock x;
    const json& parts = require(*it, "explosion", "parts");
    if (!parts.is_object()) throw ValidationError("explosion.parts: expected an object");
    for (const auto& [key, value] : parts.items()) {
      if (f.quiver.vertex_index(key) < 0)
        throw ValidationError("explosion.parts: unknown vertex '" + key + "'");
      if (!value.is_array()) throw ValidationError("explosion.parts: expected arrays of integers");
      std::vector<int> ps;
      for (const json& x2 : value) {
        if (!x2.is_number_integer() || x2.get<long long>() < 0 || x2.get<long long>() > 1000000)
          throw ValidationError("explosion.parts: expected arrays of small nonnegative integers");
        ps.push_back(x2.get<int>());
      }
      x.parts[key] = std::move(ps);
    }
    f.explosion = std::move(x);
  }

  if (auto it = j.find("flags"); it != j.end()) {
    require_keys(*it, "flags", {"scalar_flavor", "quotient_scalar", "normalize_orientation"});
    auto flag = [&](const char* name) {
      auto fit = it->find(name);
      if (fit == it->end()) return false;
      if (!fit->is_boolean()) throw ValidationError(std::string("flags.") + name + ": expected a boolean");
      return fit->get<bool>();
    };
    f.flags.scalar_flavor = flag("scalar_flavor");
    f.flags.quotient_scalar = flag("quotient_scalar");
    f.flags.normalize_orientation = flag("normalize_orientation");
  }

  return f;
}

ProblemFile load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
  return problem_from_json(j);
}

json json_int(const Int& x) {
  if (x.fits_slong_p()) return static_cast<long long>(x.get_si());
  return x.get_str();
}

json vec_to_json(const IntVec& v) {
  json out = json::array();
  for (const Int& x : v) out.push_back(json_int(x));
  return out;
}

json report_to_json(const GluabilityReport& r) {
  json out;
  out["gluable"] = r.gluable;
  out["injectivity_ok"] = r.injectivity_ok;
  out["support_size"] = r.support_size;
  out["pairs_checked"] = r.pairs_checked;
  json ws = json::array();
  for (const GluabilityWitness& w : r.witnesses) {
    json jw;
    jw["xi1"] = vec_to_json(w.xi1);
    jw["xi2"] = vec_to_json(w.xi2);
    jw["restriction1"] = vec_to_json(w.r1);
    jw["restriction2"] = vec_to_json(w.r2);
    if (w.alpha) jw["alpha"] = w.alpha->get_str();
    jw["alpha_unconstrained"] = w.alpha_unconstrained;
    jw["mu_gauge"] = vec_to_json(w.mu_gauge);
    jw["mu"] = vec_to_json(w.mu);
    jw["zero_restrictions"] = w.zero_restrictions;
    ws.push_back(jw);
  }
  out["witnesses"] = ws;
  return out;
}

json report_to_json(const CrossCheckReport& r) {
  json out;
  out["gluable"] = r.gluable;
  out["consistent"] = r.consistent;
  out["witnesses_checked"] = r.witnesses_checked;
  out["pairs_scanned"] = r.pairs_scanned;
  out["dominant_count"] = json_int(r.dominant_count);
  out["lambdas_enumerated"] = r.lambdas_enumerated;
  out["enumeration_truncated"] = r.enumeration_truncated;
  json fs = json::array();
  for (const CrossCheckFailure& f : r.failures) {
    json jf;
    jf["what"] = f.what;
    jf["lambda"] = vec_to_json(f.lambda);
    fs.push_back(jf);
  }
  out["failures"] = fs;
  return out;
}

json hypotheses_to_json(const ParallelLiftReport& r) {
  json out;
  out["loop_free"] = r.loop_free;
  out["parallels_same_orientation"] = r.parallels_same_orientation;
  out["lifts_parallel"] = r.lifts_parallel;
  auto pairs = [](const std::vector<std::pair<std::string, std::string>>& v) {
    json arr = json::array();
    for (const auto& [a, b] : v) arr.push_back({a, b});
    return arr;
  };
  out["orientation_violations"] = pairs(r.orientation_violations);
  out["lifting_violations"] = pairs(r.lifting_violations);
  return out;
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

}  // namespace cbglue
