#pragma once

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cbglue/euler.hpp"
#include "cbglue/gluability.hpp"
#include "cbglue/quiver.hpp"

namespace cbglue {

struct ProblemFlags {
  bool scalar_flavor = false;
  bool quotient_scalar = false;
  bool normalize_orientation = false;
};

struct DismembermentBlock {
  Quiver quiver;  // the dismembered quiver, mapping onto the main one
  std::map<std::string, std::string> vertex_map;
  std::map<std::string, std::string> edge_map;
};

struct ExplosionBlock {
  std::map<std::string, std::vector<int>> parts;
};

// On-disk problem document. Top-level JSON keys: quiver, dims, and
// optionally dismemberment, explosion, flags. dims is an object keyed by
// vertex id. Unknown keys are rejected so typos fail loudly.
struct ProblemFile {
  Quiver quiver;
  Dims dims;
  std::optional<DismembermentBlock> dismemberment;
  std::optional<ExplosionBlock> explosion;
  ProblemFlags flags;
};

nlohmann::json quiver_to_json(const Quiver& q);
Quiver quiver_from_json(const nlohmann::json& j);

nlohmann::json problem_to_json(const ProblemFile& f);
ProblemFile problem_from_json(const nlohmann::json& j);
ProblemFile load_problem_file(const std::string& path);

// Integers that fit in 64 bits stay JSON numbers; anything wider becomes a
// decimal string so nothing silently loses precision.
nlohmann::json json_int(const Int& x);
nlohmann::json vec_to_json(const IntVec& v);

nlohmann::json report_to_json(const GluabilityReport& r);
nlohmann::json report_to_json(const CrossCheckReport& r);
nlohmann::json hypotheses_to_json(const ParallelLiftReport& r);

// Sorted keys (nlohmann's default map), two-space indent, trailing newline:
// the byte-stable shape every command prints.
std::string dump_canonical(const nlohmann::json& j);

}  // namespace cbglue
