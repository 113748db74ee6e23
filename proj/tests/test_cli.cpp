#include <doctest.h>

#include <json.hpp>

#include <string>

#include "cli_util.hpp"

using nlohmann::json;
using cliutil::run;
using cliutil::write_temp;

namespace {

const std::string kFixtures = CBGLUE_FIXTURE_DIR;

std::string fixture(const char* name) { return kFixtures + "/" + name; }

}  // namespace

TEST_CASE("check-gluable decides the fixture problems") {
  cliutil::RunResult r = run("check-gluable " + fixture("chain_finest.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("gluable") == 0);

  r = run("check-gluable " + fixture("split_parallel.json"));
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("not gluable") == 0);
  CHECK(r.out.find("witness:") != std::string::npos);

  r = run("check-gluable " + fixture("loop_identity.json"));
  CHECK(r.exit_code == 1);

  r = run("check-gluable " + fixture("explosion.json"));
  CHECK(r.exit_code == 0);
}

TEST_CASE("check-gluable --json reports the full diagnosis") {
  cliutil::RunResult r = run("check-gluable --json " + fixture("split_parallel.json"));
  CHECK(r.exit_code == 1);
  json j = json::parse(r.out);
  CHECK(j["command"] == "check-gluable");
  CHECK(j["gluable"] == false);
  CHECK(j["dismemberment"] == true);
  CHECK(j["lemma_applies"] == false);
  CHECK(j["hypotheses"]["lifts_parallel"] == false);
  CHECK(j["report"]["witnesses"].size() == 1);
  CHECK(j["report"]["witnesses"][0]["mu_gauge"] == json::array({1, 0, -1, 0}));
  CHECK(j.find("dismemberment_why") == j.end());

  r = run("check-gluable --json " + fixture("chain_finest.json"));
  CHECK(r.exit_code == 0);
  j = json::parse(r.out);
  CHECK(j["gluable"] == true);
  CHECK(j["lemma_applies"] == true);
  CHECK(j["report"]["witnesses"].empty());
}

TEST_CASE("scalar flags change the problem that gets decided") {
  cliutil::RunResult r = run("check-gluable --scalar-flavor " + fixture("split_parallel.json"));
  CHECK(r.exit_code == 0);

  r = run("check-gluable --quotient-scalar " + fixture("split_parallel.json"));
  CHECK(r.exit_code == 1);

  r = run("check-gluable --quotient-scalar " + fixture("chain_finest.json"));
  CHECK(r.exit_code == 0);

  r = run("check-gluable --scalar-flavor --quotient-scalar " + fixture("chain_finest.json"), "",
          true);
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("mutually exclusive") != std::string::npos);
}

TEST_CASE("malformed documents exit with the input-error code") {
  for (const char* name : {"bad_unknown_key.json", "bad_missing_dim.json", "bad_not_json.json"}) {
    cliutil::RunResult r = run("check-gluable " + fixture(name), "", true);
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("error:") != std::string::npos);
  }

  cliutil::RunResult r = run("check-gluable /nonexistent.json", "", true);
  CHECK(r.exit_code == 2);

  std::string neither = write_temp(R"({
    "quiver": {"vertices": ["a"], "edges": []},
    "dims": {"a": 1}
  })",
                                   "neither");
  r = run("check-gluable " + neither, "", true);
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("exactly one of dismemberment or explosion") != std::string::npos);

  std::string both = write_temp(R"({
    "quiver": {"vertices": ["a", "b"], "edges": [{"id": "e", "src": "a", "dst": "b"}]},
    "dims": {"a": 1, "b": 1},
    "dismemberment": {
      "quiver": {"vertices": ["a@e", "b@e"], "edges": [{"id": "e", "src": "a@e", "dst": "b@e"}]},
      "vertex_map": {"a@e": "a", "b@e": "b"},
      "edge_map": {"e": "e"}
    },
    "explosion": {"parts": {"a": [1]}}
  })",
                                "both");
  r = run("check-gluable " + both, "", true);
  CHECK(r.exit_code == 2);
}

TEST_CASE("construct emits documents the checker accepts") {
  cliutil::RunResult r = run("construct partition-quiver 4 2,2");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["flags"]["quotient_scalar"] == true);
  CHECK(j.contains("dismemberment"));
  CHECK(j["quiver"]["vertices"].size() == 7);

  std::string doc = write_temp(r.out, "pq22");
  cliutil::RunResult chk = run("check-gluable --json " + doc);
  CHECK(chk.exit_code == 0);
  json cj = json::parse(chk.out);
  CHECK(cj["gluable"] == true);
  CHECK(cj["quotient_scalar"] == true);

  r = run("construct partition-quiver 4 3,2", "", true);
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("parts sum to 5") != std::string::npos);
}

TEST_CASE("construct knows the catalogue") {
  cliutil::RunResult r = run("construct chain 3");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["quiver"]["vertices"] == json::array({"c1", "c2", "c3"}));
  CHECK(j["dims"]["c3"] == 3);
  CHECK_FALSE(j.contains("dismemberment"));

  r = run("construct a-legs 2,1");
  REQUIRE(r.exit_code == 0);
  j = json::parse(r.out);
  CHECK(j["quiver"]["vertices"].size() == 3);

  r = run("construct comet --genus 1 --dim 2");
  REQUIRE(r.exit_code == 0);
  j = json::parse(r.out);
  CHECK(j["quiver"]["vertices"] == json::array({"c"}));
  CHECK(j["quiver"]["edges"][0]["id"] == "loop1");

  r = run("construct comet --dim 3 --puncture 1,1,1");
  REQUIRE(r.exit_code == 0);
  j = json::parse(r.out);
  CHECK(j["quiver"]["vertices"].size() == 3);

  CHECK(run("construct comet", "", true).exit_code == 2);
  CHECK(run("construct comet 3 --dim 3", "", true).exit_code == 2);
  CHECK(run("construct chain 3x", "", true).exit_code == 2);
  CHECK(run("construct chain", "", true).exit_code == 2);
  CHECK(run("construct chain 0", "", true).exit_code == 2);
  CHECK(run("construct frobnicate 1", "", true).exit_code == 2);
}

TEST_CASE("construct dismember-finest and explode round through the checker") {
  cliutil::RunResult chain = run("construct chain 3");
  REQUIRE(chain.exit_code == 0);
  std::string chain_doc = write_temp(chain.out, "chain3");

  cliutil::RunResult fine = run("construct dismember-finest " + chain_doc);
  REQUIRE(fine.exit_code == 0);
  json j = json::parse(fine.out);
  REQUIRE(j.contains("dismemberment"));
  CHECK(j["dismemberment"]["quiver"]["vertices"].size() == 4);

  std::string fine_doc = write_temp(fine.out, "chain3fine");
  CHECK(run("check-gluable " + fine_doc).exit_code == 0);

  cliutil::RunResult ex = run("construct explode " + fixture("explosion.json"));
  REQUIRE(ex.exit_code == 0);
  j = json::parse(ex.out);
  CHECK(j["quiver"]["vertices"] == json::array({"xab1", "xab2", "b"}));
  CHECK(j["quiver"]["edges"].size() == 2);

  CHECK(run("construct explode " + chain_doc, "", true).exit_code == 2);
}

TEST_CASE("verify cross-checks both factor kinds") {
  cliutil::RunResult r = run("verify " + fixture("chain_finest.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("homological: consistent") != std::string::npos);
  CHECK(r.out.find("k-theoretic: consistent") != std::string::npos);

  r = run("verify --json --bound 1 " + fixture("split_parallel.json"));
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["command"] == "verify");
  CHECK(j["bound"] == 1);
  CHECK(j["consistent"] == true);
  CHECK(j["homological"]["gluable"] == false);
  CHECK(j["homological"]["witnesses_checked"] == 1);
  CHECK(j["k_theoretic"]["consistent"] == true);

  r = run("verify --json " + fixture("loop_identity.json"));
  CHECK(r.exit_code == 0);
  j = json::parse(r.out);
  CHECK(j["consistent"] == true);

  CHECK(run("verify --bound 0 " + fixture("chain_finest.json"), "", true).exit_code == 2);
  CHECK(run("verify --bound 65 " + fixture("chain_finest.json"), "", true).exit_code == 2);
}

TEST_CASE("usage errors and help behave like a unix tool") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("check-gluable --help").exit_code == 0);
  CHECK(run("", "", true).exit_code == 2);
  CHECK(run("frobnicate", "", true).exit_code == 2);
  CHECK(run("check-gluable", "", true).exit_code == 2);
  CHECK(run("check-gluable --wat x.json", "", true).exit_code == 2);
}

TEST_CASE("output is deterministic across runs and thread counts") {
  std::string a = run("construct partition-quiver 4 2,2").out;
  std::string b = run("construct partition-quiver 4 2,2").out;
  CHECK(a == b);

  std::string base = run("check-gluable --json " + fixture("split_parallel.json")).out;
  CHECK(run("check-gluable --json " + fixture("split_parallel.json")).out == base);
  CHECK(run("check-gluable --json " + fixture("split_parallel.json"), "COULOMB_GLUE_THREADS=1")
            .out == base);
  CHECK(run("check-gluable --json " + fixture("split_parallel.json"), "COULOMB_GLUE_THREADS=4")
            .out == base);
}
