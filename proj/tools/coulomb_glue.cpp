#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cbglue/constructions.hpp"
#include "cbglue/errors.hpp"
#include "cbglue/euler.hpp"
#include "cbglue/gaugerep.hpp"
#include "cbglue/gluability.hpp"
#include "cbglue/io.hpp"
#include "cbglue/quiver.hpp"

namespace {

using namespace cbglue;
using nlohmann::json;

constexpr int kAffirmative = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;
constexpr int kInternal = 3;

int strict_int(const std::string& s) {
  size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw ValidationError("cannot parse '" + s + "' as an integer");
  }
  if (used != s.size()) throw ValidationError("cannot parse '" + s + "' as an integer");
  return v;
}

std::vector<int> parse_parts(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(strict_int(item));
  if (out.empty()) throw ValidationError("expected a comma-separated list of integers");
  return out;
}

struct CommandFlags {
  bool json = false;
  bool scalar_flavor = false;
  bool quotient_scalar = false;
  bool normalize_orientation = false;
  int bound = 2;
};

ProblemFlags merged_flags(const ProblemFile& f, const CommandFlags& cli) {
  ProblemFlags out = f.flags;
  out.scalar_flavor |= cli.scalar_flavor;
  out.quotient_scalar |= cli.quotient_scalar;
  out.normalize_orientation |= cli.normalize_orientation;
  return out;
}

// Everything check-gluable and verify share: the weights upstairs, the
// restriction map, and the dismemberment diagnostics when applicable.
struct Assembled {
  WeightMultiset weights;
  TorusMap restriction;
  GluabilityProblem problem;  // post-quotient when the flag asks for it
  bool from_dismemberment = false;
  bool dismemberment = false;
  std::string dismemberment_why;
  ParallelLiftReport hypotheses;
  bool lemma_applies = false;
};

Assembled assemble(const ProblemFile& f, const ProblemFlags& flags) {
  if (f.dismemberment.has_value() == f.explosion.has_value())
    throw ValidationError("file must carry exactly one of dismemberment or explosion");
  if (flags.scalar_flavor && flags.quotient_scalar)
    throw ValidationError("scalar_flavor and quotient_scalar are mutually exclusive");
  validate_dims(f.quiver, f.dims);

  Assembled a;
  if (f.dismemberment) {
    QuiverMorphism gamma;
    gamma.source = f.dismemberment->quiver;
    gamma.target = f.quiver;
    gamma.vertex_map = f.dismemberment->vertex_map;
    gamma.edge_map = f.dismemberment->edge_map;
    gamma.validate();
    if (flags.normalize_orientation) gamma = normalize_parallel_orientation(gamma);

    a.from_dismemberment = true;
    a.dismemberment = is_dismemberment(gamma, &a.dismemberment_why);
    a.hypotheses = parallel_lifting_check(gamma);
    a.lemma_applies = a.dismemberment && a.hypotheses.hypotheses_hold();
    a.restriction = torus_map_of_vertex_identification(gamma, f.dims);
    a.weights =
        weights_of_quiver_rep(gauge_torus(gamma.source, gamma.pull_back_dims(f.dims)));
  } else {
    Quiver q = flags.normalize_orientation ? normalize_parallel_orientation(f.quiver) : f.quiver;
    Explosion x = explode(q, f.dims, f.explosion->parts);
    a.restriction = torus_map_of_explosion(x);
    a.weights = weights_of_quiver_rep(gauge_torus(q, f.dims));
  }

  if (flags.quotient_scalar)
    a.problem = scalar_quotient_problem(a.weights, a.restriction);
  else
    a.problem = GluabilityProblem::with_identity_gauge(a.weights, a.restriction);
  return a;
}

void print_witnesses(const GluabilityReport& rep) {
  constexpr size_t kShown = 10;
  for (size_t i = 0; i < rep.witnesses.size() && i < kShown; ++i) {
    const GluabilityWitness& w = rep.witnesses[i];
    std::cout << "  witness: xi1=" << to_string(w.xi1) << " xi2=" << to_string(w.xi2)
              << " restrict to " << to_string(w.r1) << ", " << to_string(w.r2)
              << "; mu=" << to_string(w.mu_gauge) << "\n";
  }
  if (rep.witnesses.size() > kShown)
    std::cout << "  ... and " << rep.witnesses.size() - kShown << " more\n";
}

int run_check_gluable(const std::string& path, const CommandFlags& cli) {
  ProblemFile f = load_problem_file(path);
  ProblemFlags flags = merged_flags(f, cli);
  Assembled a = assemble(f, flags);

  GluabilityReport rep;
  if (flags.scalar_flavor) {
    // Guaranteed-affirmative self-check: the flavored triple is decided from
    // scratch and a negative verdict would be an internal error.
    rep = gluable_after_scalar(GluabilityProblem::with_identity_gauge(a.weights, a.restriction));
  } else {
    rep = is_gluable(a.problem);
    if (a.lemma_applies && !rep.gluable)
      throw InternalError("dismemberment satisfies the parallel-lift hypotheses "
                          "but the verdict is negative");
  }

  if (cli.json) {
    json out;
    out["command"] = "check-gluable";
    out["gluable"] = rep.gluable;
    out["scalar_flavor"] = flags.scalar_flavor;
    out["quotient_scalar"] = flags.quotient_scalar;
    out["report"] = report_to_json(rep);
    if (a.from_dismemberment) {
      out["dismemberment"] = a.dismemberment;
      if (!a.dismemberment) out["dismemberment_why"] = a.dismemberment_why;
      out["hypotheses"] = hypotheses_to_json(a.hypotheses);
      out["lemma_applies"] = a.lemma_applies;
    }
    std::cout << dump_canonical(out);
  } else {
    std::cout << (rep.gluable ? "gluable" : "not gluable") << " (" << rep.support_size
              << " weights, " << rep.pairs_checked << " pairs)\n";
    if (a.from_dismemberment) {
      if (!a.dismemberment)
        std::cout << "  note: map is a vertex identification, not a dismemberment ("
                  << a.dismemberment_why << ")\n";
      else if (a.lemma_applies)
        std::cout << "  hypotheses hold: loop-free, parallel classes aligned, lifts parallel\n";
    }
    print_witnesses(rep);
  }
  return rep.gluable ? kAffirmative : kNegative;
}

int run_verify(const std::string& path, const CommandFlags& cli) {
  ProblemFile f = load_problem_file(path);
  ProblemFlags flags = merged_flags(f, cli);
  Assembled a = assemble(f, flags);

  GluabilityProblem p = a.problem;
  if (flags.scalar_flavor) {
    WeightMultiset flavored = add_scalar_flavor(a.weights);
    p = GluabilityProblem::with_identity_gauge(flavored, TorusMap::identity(flavored.ambient));
  }

  CrossCheckReport hom = cross_check(p, cli.bound, FactorKind::homological);
  CrossCheckReport kth = cross_check(p, cli.bound, FactorKind::k_theoretic);
  bool consistent = hom.consistent && kth.consistent;

  if (cli.json) {
    json out;
    out["command"] = "verify";
    out["bound"] = cli.bound;
    out["consistent"] = consistent;
    out["homological"] = report_to_json(hom);
    out["k_theoretic"] = report_to_json(kth);
    std::cout << dump_canonical(out);
  } else {
    auto line = [&](const char* kind, const CrossCheckReport& r) {
      std::cout << kind << ": " << (r.consistent ? "consistent" : "INCONSISTENT") << " (gluable="
                << (r.gluable ? "yes" : "no") << ", witnesses=" << r.witnesses_checked
                << ", pairs=" << r.pairs_scanned << ", lambdas=" << r.lambdas_enumerated
                << (r.enumeration_truncated ? ", truncated" : "") << ")\n";
      for (const CrossCheckFailure& fail : r.failures)
        std::cout << "  failure: " << fail.what
                  << (fail.lambda.empty() ? "" : " at lambda=" + to_string(fail.lambda)) << "\n";
    };
    line("homological", hom);
    line("k-theoretic", kth);
  }
  return consistent ? kAffirmative : kInternal;
}

json built_to_json(const BuiltQuiver& b, const ProblemFlags& flags = {}) {
  ProblemFile f;
  f.quiver = b.quiver;
  f.dims = b.dims;
  f.flags = flags;
  return problem_to_json(f);
}

int run_construct(const std::string& kind, const std::vector<std::string>& args, int genus,
                  int dim, const std::vector<std::string>& puncture_args,
                  const CommandFlags& cli) {
  json out;
  if (kind == "chain") {
    if (args.size() != 1) throw ValidationError("chain needs one argument: N");
    out = built_to_json(build_chain(strict_int(args[0])));
  } else if (kind == "a-legs") {
    if (args.size() != 1) throw ValidationError("a-legs needs one argument: PARTS");
    out = built_to_json(build_a_legs(Partition{parse_parts(args[0])}));
  } else if (kind == "partition-quiver") {
    if (args.size() != 2) throw ValidationError("partition-quiver needs two arguments: N PARTS");
    Partition p{parse_parts(args[1])};
    p.validate();
    if (p.sum() != strict_int(args[0]))
      throw ValidationError("parts sum to " + std::to_string(p.sum()) + ", expected " + args[0]);
    PartitionGluing g = partition_gluing_map(p);
    ProblemFile f;
    f.quiver = g.glued.quiver;
    f.dims = g.glued.dims;
    DismembermentBlock d;
    d.quiver = g.morphism.source;
    d.vertex_map = g.morphism.vertex_map;
    d.edge_map = g.morphism.edge_map;
    f.dismemberment = std::move(d);
    f.flags.quotient_scalar = true;
    f.flags.scalar_flavor = cli.scalar_flavor;
    out = problem_to_json(f);
  } else if (kind == "comet") {
    if (!args.empty()) throw ValidationError("comet takes only --genus/--dim/--puncture");
    if (dim < 1) throw ValidationError("comet needs --dim N with N >= 1");
    std::vector<Puncture> punctures;
    for (const std::string& s : puncture_args) punctures.push_back(Puncture{parse_parts(s)});
    out = built_to_json(build_comet(genus, dim, punctures));
  } else if (kind == "dismember-finest") {
    if (args.size() != 1) throw ValidationError("dismember-finest needs one argument: FILE");
    ProblemFile f = load_problem_file(args[0]);
    ProblemFlags flags = merged_flags(f, cli);
    validate_dims(f.quiver, f.dims);
    ProblemFile doc;
    doc.quiver =
        flags.normalize_orientation ? normalize_parallel_orientation(f.quiver) : f.quiver;
    doc.dims = f.dims;
    QuiverMorphism gamma = finest_dismemberment(doc.quiver);
    DismembermentBlock d;
    d.quiver = gamma.source;
    d.vertex_map = gamma.vertex_map;
    d.edge_map = gamma.edge_map;
    doc.dismemberment = std::move(d);
    doc.flags.scalar_flavor = flags.scalar_flavor;
    doc.flags.quotient_scalar = flags.quotient_scalar;
    out = problem_to_json(doc);
  } else if (kind == "explode") {
    if (args.size() != 1) throw ValidationError("explode needs one argument: FILE");
    ProblemFile f = load_problem_file(args[0]);
    if (!f.explosion) throw ValidationError("file has no explosion parts");
    ProblemFlags flags = merged_flags(f, cli);
    Quiver q = flags.normalize_orientation ? normalize_parallel_orientation(f.quiver) : f.quiver;
    Explosion x = explode(q, f.dims, f.explosion->parts);
    BuiltQuiver b;
    b.quiver = x.exploded;
    b.dims = x.exploded_dims;
    out = built_to_json(b);
  } else {
    throw ValidationError("unknown construction '" + kind +
                          "' (expected partition-quiver, a-legs, chain, comet, "
                          "dismember-finest, or explode)");
  }
  std::cout << dump_canonical(out);
  return kAffirmative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gluability checks and quiver constructions for Coulomb-branch gluing"};
  app.require_subcommand(1);

  CommandFlags flags;
  std::string file;
  std::string kind;
  std::vector<std::string> construct_args;
  int genus = 0;
  int dim = 0;
  std::vector<std::string> punctures;

  CLI::App* check = app.add_subcommand("check-gluable", "decide gluability for a problem file");
  check->add_flag("--json", flags.json, "structured report on stdout");
  check->add_flag("--scalar-flavor", flags.scalar_flavor,
                  "check the scalar-flavored triple (guaranteed affirmative)");
  check->add_flag("--quotient-scalar", flags.quotient_scalar,
                  "work modulo the diagonal scalar on both sides");
  check->add_flag("--normalize-orientation", flags.normalize_orientation,
                  "align parallel edge classes before deciding");
  check->add_option("file", file, "problem file")->required();

  CLI::App* construct = app.add_subcommand("construct", "emit a quiver document");
  construct->add_flag("--json", flags.json, "accepted for symmetry; output is always JSON");
  construct->add_flag("--scalar-flavor", flags.scalar_flavor, "set the flag in the document");
  construct->add_flag("--quotient-scalar", flags.quotient_scalar, "set the flag in the document");
  construct->add_flag("--normalize-orientation", flags.normalize_orientation,
                      "normalize the input quiver first");
  construct->add_option("--genus", genus, "comet: number of loops");
  construct->add_option("--dim", dim, "comet: central dimension");
  construct->add_option("--puncture", punctures, "comet: puncture partition, comma-separated")
      ->take_all();
  construct->add_option("kind", kind, "partition-quiver | a-legs | chain | comet | "
                                      "dismember-finest | explode")
      ->required();
  construct->add_option("args", construct_args, "construction arguments");

  CLI::App* verify = app.add_subcommand("verify", "cross-check the factor mechanism");
  verify->add_flag("--json", flags.json, "structured report on stdout");
  verify->add_flag("--scalar-flavor", flags.scalar_flavor,
                   "verify the scalar-flavored problem");
  verify->add_flag("--quotient-scalar", flags.quotient_scalar,
                   "work modulo the diagonal scalar on both sides");
  verify->add_flag("--normalize-orientation", flags.normalize_orientation,
                   "align parallel edge classes before deciding");
  verify->add_option("--bound", flags.bound, "dominant enumeration bound")->check(CLI::Range(1, 64));
  verify->add_option("file", file, "problem file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (app.got_subcommand(check)) return run_check_gluable(file, flags);
    if (app.got_subcommand(verify)) return run_verify(file, flags);
    return run_construct(kind, construct_args, genus, dim, punctures, flags);
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
