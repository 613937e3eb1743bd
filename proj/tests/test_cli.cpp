#include <catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "etl/cli.hpp"
#include "etl/etl.hpp"

using namespace etl;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string proofs_dir = ETL_PROOFS_DIR;

}  // namespace

TEST_CASE("cli: entail with countermodel") {
  const CliResult r = run({"entail", "--flavor", "b4", "--premise", "{p0}", "--premise",
                           "{~p0 | p1}", "--concl", "{p1}"});
  CHECK(r.code == 1);
  CHECK(r.out.find("p0=B p1=0") != std::string::npos);

  const CliResult holds = run({"entail", "--flavor", "k3", "--premise", "{p0 & ~p0}",
                               "--concl", "{p1}"});
  CHECK(holds.code == 0);
  CHECK(holds.out.find("holds") != std::string::npos);

  // flavor names are case-insensitive
  CHECK(run({"entail", "--flavor", "B4", "--premise", "{p0}", "--concl", "{p0}"}).code == 0);
  CHECK(run({"entail", "--flavor", "Classical", "--concl", "{p0 | ~p0}"}).code == 0);
}

TEST_CASE("cli: entail json round trips against the library") {
  const CliResult r = run({"--json", "entail", "--flavor", "b4", "--premise", "{p0}",
                           "--premise", "{~p0 | p1}", "--concl", "{p1}"});
  CHECK(r.code == 1);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  const EntailmentResult lib = entails(
      Flavor::B4, {parse_formula("{p0}").prop(), parse_formula("{~p0 | p1}").prop()},
      parse_formula("{p1}").prop());
  CHECK(j.at("holds").get<bool>() == lib.holds);
  CHECK(j.at("countermodel").get<std::string>() == render_valuation(*lib.countermodel));
  // the reported witness really is a countermodel
  const Valuation witness =
      parse_valuation(j.at("countermodel").get<std::string>(), Flavor::B4);
  CHECK(designated(eval_param(witness, parse_formula("{p0}").prop())));
  CHECK_FALSE(designated(eval_param(witness, parse_formula("{p1}").prop())));
}

TEST_CASE("cli: eval the liar") {
  const CliResult r = run({"eval", "--model", "flavor=b4 theory{} consts{$c=B} default=N",
                           "--formula", "$c == ($c :false)"});
  CHECK(r.code == 0);
  CHECK(r.out.find("value 1") != std::string::npos);
  CHECK(r.out.find("satisfied") != std::string::npos);

  const CliResult classical =
      run({"eval", "--model", "flavor=classical consts{$c=1}", "--formula",
           "$c == ($c :false)"});
  CHECK(classical.code == 1);
  CHECK(classical.out.find("value 0") != std::string::npos);

  const CliResult sat = run({"satisfies", "--model", "flavor=k3 consts{$c=N}",
                             "--formula", "$c == ($c :false)"});
  CHECK(sat.code == 0);
  CHECK(sat.out == "satisfied\n");
}

TEST_CASE("cli: check accepts the golden derivation") {
  const CliResult r = run({"check", proofs_dir + "/exists_identity.proof"});
  CHECK(r.code == 0);
  CHECK(r.out.find("accepted") != std::string::npos);
}

TEST_CASE("cli: check json matches the library verdict") {
  const std::string bad = std::filesystem::temp_directory_path() / "etl_bad.proof";
  {
    std::ofstream f(bad);
    f << "step 1 rule=R12 premises=[] ctx={} concl=v0 == v1\n";
  }
  const CliResult r = run({"--json", "check", bad});
  CHECK(r.code == 1);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK_FALSE(j.at("accepted").get<bool>());
  CHECK(j.at("step").get<int>() == 1);
  const auto reason = reason_from_string(j.at("reason").get<std::string>());
  REQUIRE(reason.has_value());
  Derivation d;
  DerivationStep s;
  s.id = 1;
  s.rule = Rule::R12;
  s.sequent = make_sequent({}, parse_formula("v0 == v1"));
  d.steps.push_back(s);
  const Verdict lib = check_derivation(d);
  CHECK(*reason == lib.reason);
  CHECK(j.at("step").get<int>() == lib.step_id);
}

TEST_CASE("cli: parse warns on unintended formulas") {
  const CliResult r = run({"parse", "--formula", "ex v0 . $c"});
  CHECK(r.code == 0);
  CHECK(r.err.find("not intended") != std::string::npos);

  const CliResult subst =
      run({"parse", "--formula", "v0 :true", "--apply-subst", "[v0 := $c]"});
  CHECK(subst.code == 0);
  CHECK(subst.out.find("$c :true") != std::string::npos);
}

TEST_CASE("cli: classify") {
  const CliResult r = run({"classify", "--valuation", "p0=B p1=1", "--fill", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("p3-proper") != std::string::npos);
}

TEST_CASE("cli: closure membership and the prime check") {
  const CliResult member = run({"closure-member", "--valuation", "p0=1", "--valuation",
                                "p0=0", "--formula", "{p0 | ~p0}"});
  CHECK(member.code == 0);
  const CliResult non = run({"closure-member", "--valuation", "p0=1", "--valuation",
                             "p0=0", "--formula", "{p0}"});
  CHECK(non.code == 1);

  const CliResult prime =
      run({"closure-member", "--valuation", "p0=B", "--check-prime"});
  CHECK(prime.code == 0);
  CHECK(prime.out.find("prime") != std::string::npos);
}

TEST_CASE("cli: consequence over the family") {
  const CliResult valid = run({"consequence", "--concl", "v0 == v0"});
  CHECK(valid.code == 0);
  CHECK(valid.out.find("valid") != std::string::npos);

  const CliResult refuted = run({"consequence", "--concl", "v0 == v0",
                                 "--include-unit-models"});
  CHECK(refuted.code == 1);
  CHECK(refuted.out.find("unit-empty") != std::string::npos);

  const CliResult budget =
      run({"consequence", "--concl", "v0 == v1", "--budget", "1"});
  CHECK(budget.code == 2);
  CHECK(budget.out.find("budget-exceeded") != std::string::npos);
}

TEST_CASE("cli: rename emits a checkable proof") {
  const CliResult r = run({"rename", proofs_dir + "/exists_identity.proof", "--constant",
                           "c", "--var", "9"});
  CHECK(r.code == 0);
  const Derivation d = parse_proof(r.out);
  CHECK(check_derivation(d).accepted);
  CHECK(r.out.find("v9") != std::string::npos);
  CHECK(r.out.find("$c") == std::string::npos);
}

TEST_CASE("cli: corpus") {
  const CliResult r = run({"corpus", proofs_dir});
  CHECK(r.code == 0);
  CHECK(r.out.find("exists_identity.proof: accepted") != std::string::npos);
}

TEST_CASE("cli: usage and input errors exit 2") {
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"entail", "--concl", "{p1"}).code == 2);           // lex error
  CHECK(run({"entail", "--concl", "v0 :true"}).code == 2);      // not a parameter formula
  CHECK(run({"check", "/nonexistent.proof"}).code == 2);
  CHECK(run({"eval", "--model", "flavor=k3 consts{$c=B}", "--formula", "$c"}).code == 2);
  const CliResult parse_err = run({"parse", "--formula", "(v0"});
  CHECK(parse_err.code == 2);
  CHECK(parse_err.err.find("expected") != std::string::npos);
}
