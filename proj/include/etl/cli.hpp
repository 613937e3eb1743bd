#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "etl/calculus.hpp"
#include "etl/consequence.hpp"
#include "etl/family.hpp"
#include "etl/formula.hpp"
#include "etl/model.hpp"
#include "etl/parse.hpp"
#include "etl/proof_io.hpp"
#include "etl/render.hpp"
#include "etl/text_forms.hpp"
#include "etl/valuation.hpp"

namespace etl {

namespace detail {

inline std::string render_sequent(const Sequent& s) {
  std::string out;
  if (!s.context.empty()) {
    out += "{ ";
    for (std::size_t i = 0; i < s.context.size(); ++i) {
      if (i) out += " ; ";
      out += render_formula(s.context[i]);
    }
    out += " } ";
  }
  out += "|- " + render_formula(s.conclusion);
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline PropFormula parse_param_argument(const std::string& text, const char* what) {
  const Formula f = parse_formula(text);
  if (f.kind() != Formula::Kind::Param)
    throw std::invalid_argument(std::string(what) +
                                " must be a parameter formula like '{p0 & ~p1}'");
  return f.prop();
}

inline void warn_unintended(const Formula& f, std::ostream& err) {
  if (!is_intended(f))
    err << "warning: formula is not intended (a quantifier binds a variable that is "
           "not free in its body)\n";
}

}  // namespace detail

/// Runs one CLI command. Exit code 0 means success / holds / accepted, 1 a
/// refuted or rejected verdict (with a witness in the report), 2 a usage or
/// input error. The CLI contains no logic of its own.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"toolkit for many-valued logics with truth operators, propositional "
               "identity and self-reference"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may trail the subcommand
  bool json = false;
  app.add_flag("--json", json, "machine-readable output");

  // parse
  auto* cmd_parse = app.add_subcommand("parse", "parse a formula, echo its canonical form");
  std::string parse_formula_text;
  std::string parse_subst_text;
  cmd_parse->add_option("--formula", parse_formula_text, "formula text")->required();
  cmd_parse->add_option("--apply-subst", parse_subst_text,
                        "substitution '[v0 := $c; ...]' to apply");

  // eval / satisfies
  std::string model_text, eval_formula_text, assign_text;
  auto* cmd_eval = app.add_subcommand("eval", "evaluate a formula in an extensional model");
  cmd_eval->add_option("--model", model_text, "model description")->required();
  cmd_eval->add_option("--formula", eval_formula_text, "formula text")->required();
  cmd_eval->add_option("--assign", assign_text, "assignment 'v0=1 v1=B'");
  auto* cmd_sat = app.add_subcommand("satisfies", "test satisfaction in a model");
  cmd_sat->add_option("--model", model_text, "model description")->required();
  cmd_sat->add_option("--formula", eval_formula_text, "formula text")->required();
  cmd_sat->add_option("--assign", assign_text, "assignment 'v0=1 v1=B'");

  // entail
  auto* cmd_entail = app.add_subcommand("entail", "many-valued consequence by enumeration");
  std::string flavor_name = "b4";
  std::vector<std::string> premise_texts;
  std::string concl_text;
  cmd_entail->add_option("--flavor", flavor_name, "classical|k3|p3|b4");
  cmd_entail->add_option("--premise", premise_texts, "premise '{...}' (repeatable)");
  cmd_entail->add_option("--concl", concl_text, "conclusion '{...}'")->required();

  // classify
  auto* cmd_classify = app.add_subcommand("classify", "classify a valuation's theory");
  std::string valuation_text;
  std::string fill_text = "0";
  cmd_classify->add_option("--valuation", valuation_text, "'p0=1 p1=B ...'")->required();
  cmd_classify->add_option("--fill", fill_text, "value of unlisted atoms (default 0)");

  // closure-member
  auto* cmd_member = app.add_subcommand(
      "closure-member", "membership in an intersection of complete theories");
  std::vector<std::string> valuation_texts;
  std::string member_formula_text;
  bool check_prime_flag = false;
  int universe_depth = 3;
  cmd_member->add_option("--valuation", valuation_texts, "'p0=1 ...' (repeatable)")
      ->required();
  cmd_member->add_option("--formula", member_formula_text, "formula '{...}'");
  cmd_member->add_flag("--check-prime", check_prime_flag,
                       "test primality against all sub-intersections instead");
  cmd_member->add_option("--universe-depth", universe_depth,
                         "desk universe depth for --check-prime (default 3)");
  cmd_member->add_option("--flavor", flavor_name, "classical|k3|p3|b4");

  // consequence
  auto* cmd_conseq =
      app.add_subcommand("consequence", "consequence over the extensional model family");
  std::vector<std::string> family_names;
  bool include_units = false;
  std::uint64_t budget = 1'000'000;
  cmd_conseq->add_option("--premise", premise_texts, "premise formula (repeatable)");
  cmd_conseq->add_option("--concl", concl_text, "conclusion formula")->required();
  cmd_conseq->add_option("--flavor", family_names,
                         "family member classical|k3|p3|b4 (repeatable; default all)");
  cmd_conseq->add_flag("--include-unit-models", include_units,
                       "also enumerate the two one-element models");
  cmd_conseq->add_option("--budget", budget, "max (model, assignment) pairs");

  // check / rename / corpus
  auto* cmd_check = app.add_subcommand("check", "check a proof file");
  std::string proof_path;
  cmd_check->add_option("file", proof_path, "proof file")->required();
  auto* cmd_rename = app.add_subcommand("rename", "rename a constant to a fresh variable");
  std::string rename_const;
  int rename_var = -1;
  std::string output_path;
  cmd_rename->add_option("file", proof_path, "proof file")->required();
  cmd_rename->add_option("--constant", rename_const, "constant name (without '$')")
      ->required();
  cmd_rename->add_option("--var", rename_var, "fresh variable index")->required();
  cmd_rename->add_option("--output", output_path, "write the result here instead of stdout");
  auto* cmd_corpus = app.add_subcommand("corpus", "check every .proof file in a directory");
  std::string corpus_dir = "proofs";
  cmd_corpus->add_option("dir", corpus_dir, "directory (default 'proofs')");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return 2;
  }

  try {
    if (cmd_parse->parsed()) {
      Formula f = parse_formula(parse_formula_text);
      const bool intended = is_intended(f);
      detail::warn_unintended(f, err);
      std::optional<Formula> result;
      if (!parse_subst_text.empty())
        result = apply_substitution(parse_substitution(parse_subst_text), f);
      if (json) {
        nlohmann::json j{{"command", "parse"},
                         {"formula", render_formula(f)},
                         {"intended", intended}};
        j["free_vars"] = nlohmann::json::array();
        for (int v : free_vars(f)) j["free_vars"].push_back(v);
        j["constants"] = nlohmann::json::array();
        for (const std::string& c : constants(f)) j["constants"].push_back(c);
        if (result) j["result"] = render_formula(*result);
        out << j.dump() << '\n';
      } else {
        out << render_formula(f) << '\n';
        if (!intended) out << "not-intended\n";
        if (result) out << "after-substitution: " << render_formula(*result) << '\n';
      }
      return 0;
    }

    if (cmd_eval->parsed() || cmd_sat->parsed()) {
      const ExtensionalModel m = parse_model_desc(model_text);
      const Formula f = parse_formula(eval_formula_text);
      detail::warn_unintended(f, err);
      const Assignment gamma = assign_text.empty()
                                   ? Assignment(m.universe().front())
                                   : parse_assignment(assign_text, m.universe().front());
      const TruthValue value = eval_gamma(m, f, gamma);
      const bool sat = m.in_true(value);
      if (json) {
        nlohmann::json j{{"command", cmd_eval->parsed() ? "eval" : "satisfies"},
                         {"satisfied", sat}};
        if (cmd_eval->parsed()) j["value"] = std::string(1, to_char(value));
        out << j.dump() << '\n';
      } else {
        if (cmd_eval->parsed()) out << "value " << to_char(value) << '\n';
        out << (sat ? "satisfied" : "not-satisfied") << '\n';
      }
      return sat ? 0 : 1;
    }

    if (cmd_entail->parsed()) {
      const auto flavor = parse_flavor(flavor_name);
      if (!flavor) throw std::invalid_argument("unknown flavor '" + flavor_name + "'");
      std::vector<PropFormula> premises;
      for (const std::string& t : premise_texts)
        premises.push_back(detail::parse_param_argument(t, "--premise"));
      const PropFormula conclusion = detail::parse_param_argument(concl_text, "--concl");
      const EntailmentResult r = entails(*flavor, premises, conclusion);
      if (json) {
        nlohmann::json j{{"command", "entail"},
                         {"flavor", to_string(*flavor)},
                         {"holds", r.holds}};
        if (r.countermodel) j["countermodel"] = render_valuation(*r.countermodel);
        out << j.dump() << '\n';
      } else if (r.holds) {
        out << "holds\n";
      } else {
        out << "refuted\ncountermodel: " << render_valuation(*r.countermodel) << '\n';
      }
      return r.holds ? 0 : 1;
    }

    if (cmd_classify->parsed()) {
      const auto fill = fill_text.size() == 1 ? truth_value_from_char(fill_text[0])
                                              : std::nullopt;
      if (!fill) throw std::invalid_argument("--fill takes 1, 0, B or N");
      const Valuation v = parse_valuation(valuation_text, Flavor::B4, *fill);
      const TheoryClass c = classify_theory(v);
      if (json)
        out << nlohmann::json{{"command", "classify"}, {"class", to_string(c)}}.dump()
            << '\n';
      else
        out << to_string(c) << '\n';
      return 0;
    }

    if (cmd_member->parsed()) {
      const auto flavor = parse_flavor(flavor_name);
      if (!flavor) throw std::invalid_argument("unknown flavor '" + flavor_name + "'");
      std::vector<Valuation> S;
      for (const std::string& t : valuation_texts)
        S.push_back(parse_valuation(t, *flavor));
      if (check_prime_flag) {
        if (S.size() > 12)
          throw std::invalid_argument("--check-prime is limited to 12 valuations");
        std::set<int> atoms;
        for (const Valuation& v : S)
          for (const auto& [atom, value] : v.explicit_values()) atoms.insert(atom);
        const std::vector<PropFormula> universe = desk_universe(atoms, universe_depth);
        std::vector<std::vector<Valuation>> pool;
        for (std::size_t mask = 1; mask < (std::size_t{1} << S.size()); ++mask) {
          std::vector<Valuation> member;
          for (std::size_t i = 0; i < S.size(); ++i)
            if (mask & (std::size_t{1} << i)) member.push_back(S[i]);
          pool.push_back(std::move(member));
        }
        const bool prime = check_prime(S, pool, universe);
        if (json)
          out << nlohmann::json{{"command", "closure-member"}, {"prime", prime}}.dump()
              << '\n';
        else
          out << (prime ? "prime" : "not-prime") << '\n';
        return prime ? 0 : 1;
      }
      if (member_formula_text.empty())
        throw std::invalid_argument("closure-member needs --formula (or --check-prime)");
      const PropFormula a = detail::parse_param_argument(member_formula_text, "--formula");
      const bool member = intersection_membership(S, a);
      if (json)
        out << nlohmann::json{{"command", "closure-member"}, {"member", member}}.dump()
            << '\n';
      else
        out << (member ? "member" : "not-member") << '\n';
      return member ? 0 : 1;
    }

    if (cmd_conseq->parsed()) {
      std::vector<Flavor> family;
      for (const std::string& name : family_names) {
        const auto flavor = parse_flavor(name);
        if (!flavor) throw std::invalid_argument("unknown flavor '" + name + "'");
        family.push_back(*flavor);
      }
      if (family.empty())
        family = {Flavor::Classical, Flavor::K3, Flavor::P3, Flavor::B4};
      std::vector<Formula> premises;
      for (const std::string& t : premise_texts) premises.push_back(parse_formula(t));
      const Formula conclusion = parse_formula(concl_text);
      for (const Formula& p : premises) detail::warn_unintended(p, err);
      detail::warn_unintended(conclusion, err);
      FamilyLimits limits;
      limits.budget = budget;
      limits.include_unit_models = include_units;
      const ConsequenceResult r = extensional_consequence(premises, conclusion, family, limits);
      if (json) {
        nlohmann::json j{{"command", "consequence"}, {"checked", r.checked}};
        j["verdict"] = r.verdict == FamilyVerdict::Valid     ? "valid"
                       : r.verdict == FamilyVerdict::Refuted ? "refuted"
                                                             : "budget-exceeded";
        if (r.counter) {
          j["model"] = r.counter->model.describe();
          j["assignment"] = render_assignment(r.counter->assignment);
        }
        out << j.dump() << '\n';
      } else {
        switch (r.verdict) {
          case FamilyVerdict::Valid: out << "valid\n"; break;
          case FamilyVerdict::Refuted:
            out << "refuted\nmodel: " << r.counter->model.describe()
                << "\nassignment: " << render_assignment(r.counter->assignment) << '\n';
            break;
          case FamilyVerdict::BudgetExceeded:
            out << "budget-exceeded after " << r.checked << " checks\n";
            break;
        }
      }
      if (r.verdict == FamilyVerdict::BudgetExceeded) return 2;
      return r.verdict == FamilyVerdict::Valid ? 0 : 1;
    }

    if (cmd_check->parsed()) {
      const Derivation d = parse_proof(detail::read_file(proof_path));
      const Verdict v = check_derivation(d);
      if (json) {
        nlohmann::json j{{"command", "check"}, {"accepted", v.accepted}};
        j["steps"] = d.steps.size();
        if (v.accepted) {
          if (!d.steps.empty()) j["final"] = detail::render_sequent(d.steps.back().sequent);
        } else {
          j["step"] = v.step_id;
          j["reason"] = to_string(v.reason);
          j["message"] = v.message;
        }
        out << j.dump() << '\n';
      } else if (v.accepted) {
        out << "accepted\n";
        if (!d.steps.empty())
          out << "final: " << detail::render_sequent(d.steps.back().sequent) << '\n';
      } else {
        out << "rejected at step " << v.step_id << " (" << to_string(v.reason) << "): "
            << v.message << '\n';
      }
      return v.accepted ? 0 : 1;
    }

    if (cmd_rename->parsed()) {
      const Derivation d = parse_proof(detail::read_file(proof_path));
      const Derivation renamed = rename_constant(d, rename_const, rename_var);
      const std::string text = render_proof(renamed);
      if (output_path.empty()) {
        out << text;
      } else {
        std::ofstream o(output_path, std::ios::binary);
        if (!o) throw std::invalid_argument("cannot write '" + output_path + "'");
        o << text;
      }
      return 0;
    }

    if (cmd_corpus->parsed()) {
      namespace fs = std::filesystem;
      if (!fs::is_directory(corpus_dir))
        throw std::invalid_argument("'" + corpus_dir + "' is not a directory");
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(corpus_dir))
        if (entry.path().extension() == ".proof") files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      if (files.empty()) throw std::invalid_argument("no .proof files in '" + corpus_dir + "'");
      bool all_ok = true;
      nlohmann::json results = nlohmann::json::array();
      for (const fs::path& file : files) {
        std::string line;
        bool ok = false;
        try {
          const Verdict v = check_derivation(parse_proof(detail::read_file(file.string())));
          ok = v.accepted;
          line = v.accepted ? "accepted"
                            : "rejected at step " + std::to_string(v.step_id) + " (" +
                                  to_string(v.reason) + ")";
        } catch (const ParseError& e) {
          line = std::string("parse error: ") + e.what();
        }
        all_ok = all_ok && ok;
        if (json)
          results.push_back({{"file", file.filename().string()}, {"accepted", ok}});
        else
          out << file.filename().string() << ": " << line << '\n';
      }
      if (json)
        out << nlohmann::json{{"command", "corpus"}, {"all_accepted", all_ok},
                              {"results", results}}
                   .dump()
            << '\n';
      return all_ok ? 0 : 1;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace etl
