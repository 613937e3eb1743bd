#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "etl/etl.hpp"
#include "generators.hpp"

using namespace etl;
using F = Formula;
using P = PropFormula;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

DerivationStep step(int id, Rule rule, std::vector<int> premises, std::vector<Formula> ctx,
                    Formula concl, std::map<std::string, Formula> params = {}) {
  DerivationStep s;
  s.id = id;
  s.rule = rule;
  s.premises = std::move(premises);
  s.sequent = make_sequent(std::move(ctx), std::move(concl));
  s.params = std::move(params);
  return s;
}

const std::filesystem::path proofs_dir = ETL_PROOFS_DIR;

}  // namespace

TEST_CASE("the existence derivation is accepted") {
  // step 1: |- $c == $c by alpha reflexivity, step 2: introduce the existential
  Derivation d;
  d.steps.push_back(step(1, Rule::R12, {}, {}, parse_formula("$c == $c")));
  d.steps.push_back(step(2, Rule::R8, {1}, {}, parse_formula("ex v0 . v0 == $c"),
                         {{"x", F::var(0)},
                          {"z", F::var(0)},
                          {"template", parse_formula("v0 == $c")},
                          {"witness", parse_formula("$c")}}));
  CHECK(check_derivation(d).accepted);
}

TEST_CASE("bridge rule acceptance") {
  Derivation d;
  const Formula neg = parse_formula("{~p0}");
  d.steps.push_back(step(1, Rule::R1, {}, {neg}, neg));
  d.steps.push_back(step(2, Rule::R17, {1}, {neg}, parse_formula("{p0} :false")));
  CHECK(check_derivation(d).accepted);
}

TEST_CASE("eigenvariable violations are rejected") {
  // y = v1 occurs free in the surrounding context
  Derivation d;
  const Formula ctx_extra = F::var(1);
  const Formula exists_f = parse_formula("ex v0 . v0 :true");
  const Formula goal = parse_formula("$c == $c");
  d.steps.push_back(
      step(1, Rule::R12, {}, {ctx_extra, parse_formula("v1 :true")}, goal));
  d.steps.push_back(step(2, Rule::R9, {1}, {ctx_extra, exists_f}, goal,
                         {{"x", F::var(0)},
                          {"z", F::var(0)},
                          {"y", F::var(1)},
                          {"template", parse_formula("v0 :true")}}));
  const Verdict v = check_derivation(d);
  CHECK_FALSE(v.accepted);
  CHECK(v.step_id == 2);
  CHECK(v.reason == RejectReason::EigenvariableViolation);
}

TEST_CASE("derive_base") {
  CHECK(derive_base({parse_formula("{p0}"), parse_formula("{p0 => p1}")}, P::atom(1)));
  CHECK(derive_base({}, P::disj(P::atom(0), P::negation(P::atom(0)))));
  CHECK_FALSE(derive_base({parse_formula("{p0 | p1}")}, P::atom(0)));
  // non-parameter context members are ignored
  CHECK_FALSE(derive_base({parse_formula("{p0} :false"), parse_formula("v0")}, P::atom(0)));
}

TEST_CASE("RK agrees with classical entailment over parameter members") {
  gen::Rng rng(99);
  for (int i = 0; i < 300; ++i) {
    std::vector<Formula> ctx;
    std::vector<PropFormula> props;
    const int n = gen::pick(rng, 3);
    for (int k = 0; k < n; ++k) {
      const P a = gen::prop(rng, 2);
      props.push_back(a);
      ctx.push_back(F::param(a));
    }
    if (gen::pick(rng, 2)) ctx.push_back(F::var(0));  // noise
    const P goal = gen::prop(rng, 2);
    CHECK(derive_base(ctx, goal) == entails(Flavor::Classical, props, goal).holds);
  }
}

TEST_CASE("contexts are sets") {
  // duplicate and reordered context entries do not change the verdict
  const Derivation a = parse_proof(
      "step 1 rule=R1 premises=[] ctx={ v0 ; {p0} } concl=v0\n");
  const Derivation b = parse_proof(
      "step 1 rule=R1 premises=[] ctx={ {p0} ; v0 ; {p0} } concl=v0\n");
  CHECK(check_derivation(a).accepted);
  CHECK(check_derivation(b).accepted);
  CHECK(a.steps[0].sequent.context == b.steps[0].sequent.context);
}

TEST_CASE("rename_constant") {
  const Derivation d = parse_proof(read_file(proofs_dir / "exists_identity.proof"));
  REQUIRE(check_derivation(d).accepted);

  const Derivation renamed = rename_constant(d, "c", 9);
  CHECK(check_derivation(renamed).accepted);
  CHECK(renamed.steps[1].sequent.conclusion == parse_formula("ex v0 . v0 == v9"));
  CHECK(renamed.steps[1].params.at("witness") == F::var(9));

  // renaming a constant that does not occur changes nothing
  const Derivation untouched = rename_constant(d, "zzz", 9);
  CHECK(render_proof(untouched) == render_proof(d));

  // the variable must be globally fresh
  CHECK_THROWS_AS(rename_constant(d, "c", 0), std::invalid_argument);
}

TEST_CASE("rename_constant preserves acceptance over the corpus") {
  namespace fs = std::filesystem;
  for (const auto& entry : fs::directory_iterator(proofs_dir)) {
    if (entry.path().extension() != ".proof") continue;
    const Derivation d = parse_proof(read_file(entry.path()));
    REQUIRE(check_derivation(d).accepted);
    std::set<std::string> consts;
    int max_var = 0;
    for (const DerivationStep& s : d.steps) {
      for (const Formula& f : s.sequent.context)
        for (const std::string& c : constants(f)) consts.insert(c);
      for (const std::string& c : constants(s.sequent.conclusion)) consts.insert(c);
      for (const auto& [k, f] : s.params) {
        for (const std::string& c : constants(f)) consts.insert(c);
        for (int v : all_vars(f)) max_var = std::max(max_var, v);
      }
      for (const Formula& f : s.sequent.context)
        for (int v : all_vars(f)) max_var = std::max(max_var, v);
      for (int v : all_vars(s.sequent.conclusion)) max_var = std::max(max_var, v);
    }
    int fresh = max_var + 1;
    Derivation current = d;
    for (const std::string& c : consts) {
      current = rename_constant(current, c, fresh++);
      INFO(entry.path().filename().string() << " renaming $" << c);
      CHECK(check_derivation(current).accepted);
    }
  }
}

TEST_CASE("proof files round trip") {
  namespace fs = std::filesystem;
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(proofs_dir)) {
    if (entry.path().extension() != ".proof") continue;
    ++seen;
    const Derivation d = parse_proof(read_file(entry.path()));
    const std::string text = render_proof(d);
    const Derivation back = parse_proof(text);
    REQUIRE(back.steps.size() == d.steps.size());
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
      CHECK(back.steps[i].rule == d.steps[i].rule);
      CHECK(back.steps[i].premises == d.steps[i].premises);
      CHECK(back.steps[i].sequent.context == d.steps[i].sequent.context);
      CHECK(back.steps[i].sequent.conclusion == d.steps[i].sequent.conclusion);
      CHECK(back.steps[i].params == d.steps[i].params);
    }
  }
  CHECK(seen >= 15);
}

TEST_CASE("proof file diagnostics") {
  CHECK_THROWS_AS(parse_proof("step 1 rule=R1 premises=[] ctx={ concl=v0\n"), ParseError);
  CHECK_THROWS_AS(parse_proof("step one rule=R1 premises=[] ctx={} concl=v0\n"), ParseError);
  CHECK_THROWS_AS(parse_proof("step 2 rule=R1 premises=[] ctx={} concl=v0\n"
                              "step 1 rule=R1 premises=[] ctx={} concl=v0\n"),
                  ParseError);
  // unknown rules parse but are rejected by the checker
  const Derivation d = parse_proof("step 1 rule=R99 premises=[] ctx={} concl=v0\n");
  const Verdict v = check_derivation(d);
  CHECK_FALSE(v.accepted);
  CHECK(v.reason == RejectReason::UnknownRule);
}

TEST_CASE("selected rejections carry the right reason") {
  // R12 with sides that are not alpha-congruent
  {
    Derivation d;
    d.steps.push_back(step(1, Rule::R12, {}, {}, parse_formula("v0 == v1")));
    const Verdict v = check_derivation(d);
    CHECK_FALSE(v.accepted);
    CHECK(v.reason == RejectReason::SideCondition);
  }
  // R17 applied to a non-parameter formula
  {
    Derivation d;
    d.steps.push_back(step(1, Rule::R1, {}, {F::var(0)}, F::var(0)));
    d.steps.push_back(step(2, Rule::R17, {1}, {F::var(0)}, parse_formula("v0 :false")));
    const Verdict v = check_derivation(d);
    CHECK_FALSE(v.accepted);
    CHECK(v.step_id == 2);
    CHECK(v.reason == RejectReason::NotParamFormula);
  }
  // forward premise reference
  {
    Derivation d;
    d.steps.push_back(step(1, Rule::R2, {2}, {F::var(0)}, F::var(0)));
    d.steps.push_back(step(2, Rule::R1, {}, {F::var(0)}, F::var(0)));
    const Verdict v = check_derivation(d);
    CHECK_FALSE(v.accepted);
    CHECK(v.step_id == 1);
    CHECK(v.reason == RejectReason::BadPremiseRef);
  }
  // missing R8 parameters
  {
    Derivation d;
    d.steps.push_back(step(1, Rule::R12, {}, {}, parse_formula("$c == $c")));
    d.steps.push_back(step(2, Rule::R8, {1}, {}, parse_formula("ex v0 . v0 == $c"),
                           {{"x", F::var(0)}}));
    const Verdict v = check_derivation(d);
    CHECK_FALSE(v.accepted);
    CHECK(v.reason == RejectReason::MalformedParams);
  }
  // RK refuted by the oracle
  {
    Derivation d;
    d.steps.push_back(step(1, Rule::RK, {}, {parse_formula("{p0 | p1}")},
                           parse_formula("{p0}")));
    const Verdict v = check_derivation(d);
    CHECK_FALSE(v.accepted);
    CHECK(v.reason == RejectReason::BaseOracleRefuted);
  }
}

TEST_CASE("the earliest failing step is reported") {
  Derivation d;
  d.steps.push_back(step(1, Rule::R12, {}, {}, parse_formula("$c == $c")));
  d.steps.push_back(step(2, Rule::R12, {}, {}, parse_formula("v0 == v1")));  // bad
  d.steps.push_back(step(3, Rule::R13, {}, {}, parse_formula("v0 < v0")));  // also bad
  const Verdict v = check_derivation(d);
  CHECK_FALSE(v.accepted);
  CHECK(v.step_id == 2);
}

TEST_CASE("unnormalized contexts are still treated as sets") {
  Derivation d;
  DerivationStep s;
  s.id = 1;
  s.rule = Rule::R1;
  // deliberately unsorted, duplicated context, bypassing make_sequent
  s.sequent.context = {parse_formula("v1"), parse_formula("v0"), parse_formula("v1")};
  s.sequent.conclusion = parse_formula("v0");
  d.steps.push_back(s);
  CHECK(check_derivation(d).accepted);
}

TEST_CASE("duplicate parameters are a parse error") {
  CHECK_THROWS_AS(
      parse_proof("step 1 rule=R12 premises=[] ctx={} concl=$c == $c param.x=v0 param.x=v1\n"),
      ParseError);
}

TEST_CASE("soundness smoke for a derived sequent") {
  // every accepted step of the two-step existence derivation holds classically
  const Derivation d = parse_proof(read_file(proofs_dir / "exists_identity.proof"));
  REQUIRE(check_derivation(d).accepted);
  for (const DerivationStep& s : d.steps) {
    for_each_extensional_model(
        {Flavor::Classical}, {"c"}, {}, false, [&](const ExtensionalModel& m) {
          std::set<int> vars;
          for (const Formula& f : s.sequent.context)
            for (int v : free_vars(f)) vars.insert(v);
          for (int v : free_vars(s.sequent.conclusion)) vars.insert(v);
          for_each_assignment(m, vars, [&](const Assignment& g) {
            bool premises_hold = true;
            for (const Formula& f : s.sequent.context)
              premises_hold = premises_hold && satisfies(m, g, f);
            if (premises_hold) CHECK(satisfies(m, g, s.sequent.conclusion));
            return true;
          });
          return true;
        });
  }
}
