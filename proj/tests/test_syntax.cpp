#include <catch_amalgamated.hpp>

#include "etl/etl.hpp"
#include "generators.hpp"

using namespace etl;
using F = Formula;
using P = PropFormula;

TEST_CASE("parse: postfix, identity, quantifier") {
  CHECK(parse_formula("v0 :true") == F::true_op(F::var(0)));

  const Formula liar = F::ident(F::constant("c"), F::false_op(F::constant("c")));
  CHECK(parse_formula("$c == ($c :false)") == liar);
  CHECK(parse_formula("$c == $c :false") == liar);  // postfix binds tightest

  CHECK(parse_formula("ex v0 . v0 == v0") == F::exists(0, F::ident(F::var(0), F::var(0))));
}

TEST_CASE("parse: precedence and arrow expansion") {
  CHECK(parse_formula("v0 /\\ v1 \\/ v2") ==
        F::disj(F::conj(F::var(0), F::var(1)), F::var(2)));
  CHECK(parse_formula("v0 \\/ v1 /\\ v2") ==
        F::disj(F::var(0), F::conj(F::var(1), F::var(2))));
  CHECK(parse_formula("{p0} -> v0") == F::disj(F::false_op(F::param(P::atom(0))), F::var(0)));
  // -> is right-associative
  CHECK(parse_formula("v0 -> v1 -> v2") ==
        F::arrow(F::var(0), F::arrow(F::var(1), F::var(2))));
  // == and < are the loosest binary connectives
  CHECK(parse_formula("v0 \\/ v1 == v2") == F::ident(F::disj(F::var(0), F::var(1)), F::var(2)));
  CHECK(parse_formula("v0 < v1 \\/ v2") == F::ref(F::var(0), F::disj(F::var(1), F::var(2))));
  // quantifier body extends maximally to the right
  CHECK(parse_formula("all v1 . v1 :true == v1") ==
        F::forall(1, F::ident(F::true_op(F::var(1)), F::var(1))));
}

TEST_CASE("parse: parameter expressions") {
  CHECK(parse_formula("{p0 & ~p1}") ==
        F::param(P::conj(P::atom(0), P::negation(P::atom(1)))));
  CHECK(parse_formula("{p0 & p1 | p2}") ==
        F::param(P::disj(P::conj(P::atom(0), P::atom(1)), P::atom(2))));
  CHECK(parse_formula("{p0 => p1 => p2}") ==
        F::param(P::implies(P::atom(0), P::implies(P::atom(1), P::atom(2)))));
  // an Or of two parameter leaves stays an Or, it is not folded into one leaf
  const Formula two_leaves = parse_formula("{p0} \\/ {p1}");
  CHECK(two_leaves.kind() == F::Kind::Or);
  CHECK(two_leaves.left().kind() == F::Kind::Param);
}

TEST_CASE("render: canonical spellings") {
  CHECK(render_formula(F::true_op(F::var(0))) == "v0 :true");
  CHECK(render_formula(F::ident(F::constant("c"), F::false_op(F::constant("c")))) ==
        "$c == ($c :false)");
  CHECK(render_formula(F::disj(F::conj(F::var(0), F::var(1)), F::var(2))) ==
        "v0 /\\ v1 \\/ v2");
  CHECK(render_formula(F::conj(F::var(0), F::disj(F::var(1), F::var(2)))) ==
        "v0 /\\ (v1 \\/ v2)");
  CHECK(render_formula(F::exists(0, F::ident(F::var(0), F::var(0)))) == "ex v0 . v0 == v0");
  CHECK(render_prop(P::disj(P::negation(P::atom(0)), P::atom(1))) == "~p0 | p1");
}

TEST_CASE("free_vars") {
  CHECK(free_vars(parse_formula("all v0 . v0 < v1")) == std::set<int>{1});
  CHECK(free_vars(parse_formula("v0 \\/ v0")) == std::set<int>{0});
  CHECK(free_vars(parse_formula("ex v0 . v0 == v0")).empty());
  // parameter atoms are not variables of the extension language
  CHECK(free_vars(parse_formula("{p0 & p1}")).empty());
}

TEST_CASE("is_intended") {
  CHECK_FALSE(is_intended(parse_formula("ex v0 . $c")));
  CHECK_FALSE(is_intended(parse_formula("all v0 . ex v0 . v0")));
  CHECK(is_intended(parse_formula("ex v0 . v0 :true")));
  CHECK(is_intended(parse_formula("$c < (ex v0 . v0 :true)")));
}

TEST_CASE("subformulas: pre-order") {
  CHECK(subformulas(parse_formula("v0")) == std::vector<Formula>{F::var(0)});
  CHECK(subformulas(parse_formula("v0 \\/ v1")) ==
        std::vector<Formula>{parse_formula("v0 \\/ v1"), F::var(0), F::var(1)});
  CHECK(subformulas(parse_formula("ex v0 . v0 :true")) ==
        std::vector<Formula>{parse_formula("ex v0 . v0 :true"), F::true_op(F::var(0)),
                             F::var(0)});
}

TEST_CASE("parse errors carry spans and expectations") {
  auto expect_error = [](const std::string& text) {
    try {
      parse_formula(text);
      FAIL("expected a parse error for: " << text);
    } catch (const ParseError& e) {
      CHECK(e.span().begin <= e.span().end);
      CHECK(e.span().end <= text.size());
      return std::string(e.what());
    }
    return std::string();
  };
  expect_error("(v0 :true");          // unbalanced
  expect_error("v0 @ v1");            // unknown token
  expect_error("v0 == v1 == v2");     // non-associative
  expect_error("vx");                 // not a variable
  expect_error("{p0 & }");            // parameter syntax
  expect_error("$");                  // missing identifier
  expect_error("v0 :maybe");          // unknown operator
  expect_error("");                   // empty input

  try {
    parse_formula("v0 /\\");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK_FALSE(e.expected().empty());
  }
}

TEST_CASE("round trip over random formulas") {
  gen::Rng rng(20240901);
  for (int i = 0; i < 10'000; ++i) {
    const Formula f = gen::formula(rng);
    const std::string text = render_formula(f);
    INFO(text);
    CHECK(parse_formula(text) == f);
  }
}

TEST_CASE("parse determinism") {
  gen::Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const std::string text = render_formula(gen::formula(rng));
    CHECK(parse_formula(text) == parse_formula(text));
  }
}

TEST_CASE("free_vars is a subset of all vars; closed formulas have none") {
  gen::Rng rng(11);
  for (int i = 0; i < 2'000; ++i) {
    const Formula f = gen::formula(rng);
    const std::set<int> free = free_vars(f);
    const std::set<int> all = all_vars(f);
    CHECK(std::includes(all.begin(), all.end(), free.begin(), free.end()));
    CHECK(free_vars(gen::closed_formula(rng)).empty());
  }
}

TEST_CASE("is_intended is hereditary downward") {
  gen::Rng rng(13);
  int intended_seen = 0;
  for (int i = 0; i < 3'000; ++i) {
    const Formula f = gen::formula(rng, {.depth = 5});
    if (!is_intended(f)) continue;
    ++intended_seen;
    for (const Formula& g : subformulas(f)) CHECK(is_intended(g));
  }
  CHECK(intended_seen > 100);
}
