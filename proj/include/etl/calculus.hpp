#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "etl/consequence.hpp"
#include "etl/formula.hpp"
#include "etl/render.hpp"
#include "etl/substitution.hpp"

namespace etl {

enum class Rule {
  R1, R2, R3, R4, R5, R6, R7, R8, R9, R10,
  R11, R12, R13, R14, R15, R16, R17, R18,
  RK,       // the base-calculus oracle for parameter formulas
  Unknown,  // unrecognized rule name in a proof file
};

inline std::string to_string(Rule r) {
  if (r == Rule::RK) return "RK";
  if (r == Rule::Unknown) return "?";
  return "R" + std::to_string(static_cast<int>(r) + 1);
}

inline Rule rule_from_string(const std::string& name) {
  if (name == "RK") return Rule::RK;
  if (name.size() >= 2 && name[0] == 'R') {
    bool digits = true;
    for (std::size_t i = 1; i < name.size(); ++i)
      digits = digits && std::isdigit(static_cast<unsigned char>(name[i]));
    if (digits) {
      const int n = std::stoi(name.substr(1));
      if (n >= 1 && n <= 18) return static_cast<Rule>(n - 1);
    }
  }
  return Rule::Unknown;
}

/// A sequent: a duplicate-free, order-insensitive context and a conclusion.
struct Sequent {
  std::vector<Formula> context;  // kept sorted
  Formula conclusion = Formula::var(0);
};

inline std::vector<Formula> normalize_context(std::vector<Formula> ctx) {
  std::sort(ctx.begin(), ctx.end());
  ctx.erase(std::unique(ctx.begin(), ctx.end()), ctx.end());
  return ctx;
}

inline Sequent make_sequent(std::vector<Formula> context, Formula conclusion) {
  return Sequent{normalize_context(std::move(context)), std::move(conclusion)};
}

inline bool context_contains(const std::vector<Formula>& ctx, const Formula& f) {
  return std::binary_search(ctx.begin(), ctx.end(), f);
}

inline bool context_subset(const std::vector<Formula>& a, const std::vector<Formula>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline std::vector<Formula> context_plus(std::vector<Formula> ctx, const Formula& f) {
  ctx.push_back(f);
  return normalize_context(std::move(ctx));
}

inline std::vector<Formula> context_minus(std::vector<Formula> ctx, const Formula& f) {
  ctx.erase(std::remove(ctx.begin(), ctx.end(), f), ctx.end());
  return ctx;
}

struct DerivationStep {
  int id = 0;
  Rule rule = Rule::Unknown;
  std::string rule_name;  // as written, for diagnostics on unknown rules
  std::vector<int> premises;
  Sequent sequent;
  std::map<std::string, Formula> params;
};

/// An indexed sequence of steps; the last step is the derived sequent.
struct Derivation {
  std::vector<DerivationStep> steps;
};

enum class RejectReason {
  UnknownRule,
  BadPremiseRef,
  ContextMismatch,
  SideCondition,
  EigenvariableViolation,
  NotParamFormula,
  MalformedParams,
  BaseOracleRefuted,
};

inline const char* to_string(RejectReason r) {
  switch (r) {
    case RejectReason::UnknownRule: return "UNKNOWN_RULE";
    case RejectReason::BadPremiseRef: return "BAD_PREMISE_REF";
    case RejectReason::ContextMismatch: return "CONTEXT_MISMATCH";
    case RejectReason::SideCondition: return "SIDE_CONDITION";
    case RejectReason::EigenvariableViolation: return "EIGENVARIABLE_VIOLATION";
    case RejectReason::NotParamFormula: return "NOT_PARAM_FORMULA";
    case RejectReason::MalformedParams: return "MALFORMED_PARAMS";
    case RejectReason::BaseOracleRefuted: return "BASE_ORACLE_REFUTED";
  }
  return "?";
}

inline std::optional<RejectReason> reason_from_string(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(RejectReason::BaseOracleRefuted); ++i) {
    const auto r = static_cast<RejectReason>(i);
    if (s == to_string(r)) return r;
  }
  return std::nullopt;
}

struct Verdict {
  bool accepted = true;
  int step_id = 0;
  RejectReason reason = RejectReason::UnknownRule;
  std::string message;

  static Verdict ok() { return {}; }
  static Verdict fail(int step_id, RejectReason reason, std::string message) {
    return {false, step_id, reason, std::move(message)};
  }
};

/// The base-calculus oracle: the parameter-logic members of the context
/// classically entail the goal. Non-parameter context formulas are ignored.
inline bool derive_base(const std::vector<Formula>& context, const PropFormula& goal) {
  std::vector<PropFormula> premises;
  for (const Formula& f : context)
    if (f.kind() == Formula::Kind::Param) premises.push_back(f.prop());
  return entails(Flavor::Classical, premises, goal).holds;
}

namespace detail {

struct StepCheck {
  const DerivationStep& step;
  std::vector<const DerivationStep*> prem;  // resolved premise steps

  const std::vector<Formula>& ctx() const { return step.sequent.context; }
  const Formula& concl() const { return step.sequent.conclusion; }

  std::optional<Verdict> fail(RejectReason r, std::string msg) const {
    return Verdict::fail(step.id, r, std::move(msg));
  }

  std::optional<Verdict> require_params(std::vector<std::string> keys) const {
    std::set<std::string> want(keys.begin(), keys.end());
    for (const auto& [k, v] : step.params) {
      if (!want.count(k))
        return fail(RejectReason::MalformedParams, "unexpected parameter '" + k + "'");
    }
    for (const std::string& k : keys) {
      if (!step.params.count(k))
        return fail(RejectReason::MalformedParams, "missing parameter '" + k + "'");
    }
    return std::nullopt;
  }

  // Variable-valued parameter.
  std::optional<int> var_param(const std::string& key) const {
    auto it = step.params.find(key);
    if (it == step.params.end() || it->second.kind() != Formula::Kind::Var)
      return std::nullopt;
    return it->second.var_index();
  }

  const Formula& formula_param(const std::string& key) const {
    return step.params.at(key);
  }

  std::optional<Verdict> require_ctx_equal(const DerivationStep& p) const {
    if (p.sequent.context != ctx())
      return fail(RejectReason::ContextMismatch,
                  "premise " + std::to_string(p.id) + " has a different context");
    return std::nullopt;
  }
};

inline std::set<int> free_vars_of(const std::vector<Formula>& ctx) {
  std::set<int> out;
  for (const Formula& f : ctx) {
    const std::set<int> fv = free_vars(f);
    out.insert(fv.begin(), fv.end());
  }
  return out;
}

inline std::optional<Verdict> check_step(const StepCheck& s) {
  using K = Formula::Kind;
  const auto& step = s.step;
  switch (step.rule) {
    case Rule::R1: {
      if (!context_contains(s.ctx(), s.concl()))
        return s.fail(RejectReason::SideCondition, "conclusion is not in the context");
      return std::nullopt;
    }
    case Rule::R2: {
      const DerivationStep& p = *s.prem[0];
      if (p.sequent.conclusion != s.concl())
        return s.fail(RejectReason::ContextMismatch, "conclusion differs from premise");
      if (!context_subset(p.sequent.context, s.ctx()))
        return s.fail(RejectReason::SideCondition,
                      "premise context is not a subset of the conclusion context");
      return std::nullopt;
    }
    case Rule::R3: {
      const DerivationStep& p1 = *s.prem[0];
      const DerivationStep& p2 = *s.prem[1];
      if (auto v = s.require_ctx_equal(p1)) return v;
      if (auto v = s.require_ctx_equal(p2)) return v;
      const bool direct = p2.sequent.conclusion == Formula::false_op(p1.sequent.conclusion);
      const bool swapped = p1.sequent.conclusion == Formula::false_op(p2.sequent.conclusion);
      if (!direct && !swapped)
        return s.fail(RejectReason::ContextMismatch,
                      "premises do not assert a formula and its falsity");
      return std::nullopt;
    }
    case Rule::R4: {
      for (int order = 0; order < 2; ++order) {
        const DerivationStep& p1 = *s.prem[order];
        const DerivationStep& p2 = *s.prem[1 - order];
        if (p1.sequent.conclusion != s.concl() || p2.sequent.conclusion != s.concl())
          continue;
        std::vector<Formula> candidates = p1.sequent.context;
        for (const Formula& f : s.ctx()) candidates.push_back(f);
        for (const Formula& phi : candidates) {
          if (p1.sequent.context == context_plus(s.ctx(), phi) &&
              p2.sequent.context == context_plus(s.ctx(), Formula::false_op(phi)))
            return std::nullopt;
        }
      }
      return s.fail(RejectReason::ContextMismatch,
                    "premises are not the two cases of a split over the context");
    }
    case Rule::R5:
    case Rule::R6: {
      const DerivationStep& p = *s.prem[0];
      if (auto v = s.require_ctx_equal(p)) return v;
      if (s.concl().kind() != K::Or)
        return s.fail(RejectReason::ContextMismatch, "conclusion is not a disjunction");
      const Formula side = step.rule == Rule::R5 ? s.concl().left() : s.concl().right();
      if (side != p.sequent.conclusion)
        return s.fail(RejectReason::ContextMismatch,
                      step.rule == Rule::R5
                          ? "left disjunct differs from the premise conclusion"
                          : "right disjunct differs from the premise conclusion");
      return std::nullopt;
    }
    case Rule::R7: {
      for (const Formula& chi : s.ctx()) {
        if (chi.kind() != K::Or) continue;
        const Formula phi1 = chi.left(), phi2 = chi.right();
        for (const auto& delta : {context_minus(s.ctx(), chi), s.ctx()}) {
          for (int order = 0; order < 2; ++order) {
            const DerivationStep& p1 = *s.prem[order];
            const DerivationStep& p2 = *s.prem[1 - order];
            if (p1.sequent.conclusion == s.concl() && p2.sequent.conclusion == s.concl() &&
                p1.sequent.context == context_plus(delta, phi1) &&
                p2.sequent.context == context_plus(delta, phi2))
              return std::nullopt;
          }
        }
      }
      return s.fail(RejectReason::ContextMismatch,
                    "premises do not eliminate a disjunction of the context");
    }
    case Rule::R8: {
      if (auto v = s.require_params({"x", "z", "template", "witness"})) return v;
      const auto x = s.var_param("x"), z = s.var_param("z");
      if (!x || !z)
        return s.fail(RejectReason::MalformedParams, "'x' and 'z' must be variables");
      const Formula& tmpl = s.formula_param("template");
      const Formula& witness = s.formula_param("witness");
      std::set<int> fv = free_vars(tmpl);
      if (!fv.count(*x))
        return s.fail(RejectReason::SideCondition, "x is not free in the template");
      if (*z != *x && fv.count(*z))
        return s.fail(RejectReason::SideCondition, "z is free in the template");
      const DerivationStep& p = *s.prem[0];
      if (auto v = s.require_ctx_equal(p)) return v;
      if (p.sequent.conclusion !=
          apply_substitution(Substitution::map_var(*x, witness), tmpl))
        return s.fail(RejectReason::ContextMismatch,
                      "premise is not the template instantiated with the witness");
      const Formula want = Formula::exists(
          *z, apply_substitution(Substitution::map_var(*x, Formula::var(*z)), tmpl));
      if (s.concl() != want)
        return s.fail(RejectReason::ContextMismatch,
                      "conclusion is not the existential closure of the template");
      return std::nullopt;
    }
    case Rule::R9: {
      if (auto v = s.require_params({"x", "z", "y", "template"})) return v;
      const auto x = s.var_param("x"), z = s.var_param("z"), y = s.var_param("y");
      if (!x || !z || !y)
        return s.fail(RejectReason::MalformedParams, "'x', 'z' and 'y' must be variables");
      const Formula& tmpl = s.formula_param("template");
      std::set<int> fv = free_vars(tmpl);
      if (!fv.count(*x))
        return s.fail(RejectReason::SideCondition, "x is not free in the template");
      if (*z != *x && fv.count(*z))
        return s.fail(RejectReason::SideCondition, "z is free in the template");
      const Formula exists_f = Formula::exists(
          *z, apply_substitution(Substitution::map_var(*x, Formula::var(*z)), tmpl));
      if (!context_contains(s.ctx(), exists_f))
        return s.fail(RejectReason::ContextMismatch,
                      "context does not contain the existential formula");
      // Eigenvariable condition: y fresh for Delta, the existential and psi.
      std::set<int> forbidden = free_vars_of(context_minus(s.ctx(), exists_f));
      for (int v : free_vars(tmpl))
        if (v != *x) forbidden.insert(v);
      for (int v : free_vars(s.concl())) forbidden.insert(v);
      if (forbidden.count(*y))
        return s.fail(RejectReason::EigenvariableViolation,
                      "eigenvariable v" + std::to_string(*y) + " is not fresh");
      const DerivationStep& p = *s.prem[0];
      if (p.sequent.conclusion != s.concl())
        return s.fail(RejectReason::ContextMismatch, "conclusion differs from premise");
      const Formula inst =
          apply_substitution(Substitution::map_var(*x, Formula::var(*y)), tmpl);
      for (const auto& delta : {context_minus(s.ctx(), exists_f), s.ctx()}) {
        if (p.sequent.context == context_plus(delta, inst)) return std::nullopt;
      }
      return s.fail(RejectReason::ContextMismatch,
                    "premise context is not the conclusion context with the witness "
                    "instance replacing the existential formula");
    }
    case Rule::R10: {
      if (auto v = s.require_params({"x", "template"})) return v;
      const auto x = s.var_param("x");
      if (!x) return s.fail(RejectReason::MalformedParams, "'x' must be a variable");
      const Formula& tmpl = s.formula_param("template");
      const DerivationStep& p = *s.prem[0];
      if (auto v = s.require_ctx_equal(p)) return v;
      if (p.sequent.conclusion.kind() != K::Ident)
        return s.fail(RejectReason::ContextMismatch, "premise is not an identity");
      const Formula psi = p.sequent.conclusion.left();
      const Formula psi2 = p.sequent.conclusion.right();
      const Formula want = Formula::ident(
          apply_substitution(Substitution::map_var(*x, psi), tmpl),
          apply_substitution(Substitution::map_var(*x, psi2), tmpl));
      if (s.concl() != want)
        return s.fail(RejectReason::ContextMismatch,
                      "conclusion is not the identity of the two template instances");
      return std::nullopt;
    }
    case Rule::R11: {
      const DerivationStep& p = *s.prem[0];
      if (auto v = s.require_ctx_equal(p)) return v;
      if (p.sequent.conclusion.kind() != K::Ident)
        return s.fail(RejectReason::ContextMismatch, "premise is not an identity");
      const Formula want = Formula::arrow(p.sequent.conclusion.left(),
                                          p.sequent.conclusion.right());
      if (s.concl() != want)
        return s.fail(RejectReason::ContextMismatch,
                      "conclusion is not the corresponding implication");
      return std::nullopt;
    }
    case Rule::R12: {
      if (s.concl().kind() != K::Ident)
        return s.fail(RejectReason::ContextMismatch, "conclusion is not an identity");
      if (!alpha_congruent(s.concl().left(), s.concl().right()))
        return s.fail(RejectReason::SideCondition,
                      "the two sides are not alpha-congruent");
      return std::nullopt;
    }
    case Rule::R13: {
      if (s.concl().kind() != K::Ref)
        return s.fail(RejectReason::ContextMismatch, "conclusion is not a reference");
      if (!syntactic_reference(s.concl().left(), s.concl().right()))
        return s.fail(RejectReason::SideCondition,
                      "left side does not syntactically refer into the right side");
      return std::nullopt;
    }
    case Rule::R14: {
      if (s.concl().kind() != K::Ref)
        return s.fail(RejectReason::ContextMismatch, "conclusion is not a reference");
      for (int order = 0; order < 2; ++order) {
        const DerivationStep& p1 = *s.prem[order];
        const DerivationStep& p2 = *s.prem[1 - order];
        if (p1.sequent.context != s.ctx() || p2.sequent.context != s.ctx()) continue;
        if (p1.sequent.conclusion.kind() != K::Ref ||
            p2.sequent.conclusion.kind() != K::Ref)
          continue;
        if (p1.sequent.conclusion.right() == p2.sequent.conclusion.left() &&
            s.concl().left() == p1.sequent.conclusion.left() &&
            s.concl().right() == p2.sequent.conclusion.right())
          return std::nullopt;
      }
      return s.fail(RejectReason::ContextMismatch,
                    "premises do not chain through a middle formula");
    }
    case Rule::R15: {
      const DerivationStep& p = *s.prem[0];
      if (auto v = s.require_ctx_equal(p)) return v;
      if (s.concl() != Formula::true_op(p.sequent.conclusion))
        return s.fail(RejectReason::ContextMismatch,
                      "conclusion is not the premise under :true");
      return std::nullopt;
    }
    case Rule::R16: {
      const DerivationStep& p = *s.prem[0];
      if (auto v = s.require_ctx_equal(p)) return v;
      if (p.sequent.conclusion != Formula::true_op(s.concl()))
        return s.fail(RejectReason::ContextMismatch,
                      "premise is not the conclusion under :true");
      return std::nullopt;
    }
    case Rule::R17: {
      if (s.concl().kind() != K::FalseOp)
        return s.fail(RejectReason::ContextMismatch, "conclusion is not a :false formula");
      if (s.concl().child().kind() != K::Param)
        return s.fail(RejectReason::NotParamFormula,
                      ":false is not applied to a parameter formula");
      const PropFormula a = s.concl().child().prop();
      const DerivationStep& p = *s.prem[0];
      if (auto v = s.require_ctx_equal(p)) return v;
      if (p.sequent.conclusion != Formula::param(PropFormula::negation(a)))
        return s.fail(RejectReason::ContextMismatch,
                      "premise is not the negated parameter formula");
      return std::nullopt;
    }
    case Rule::R18: {
      if (s.concl().kind() != K::Param)
        return s.fail(RejectReason::NotParamFormula,
                      "conclusion is not a parameter formula");
      if (s.concl().prop().kind() != PropFormula::Kind::Not)
        return s.fail(RejectReason::ContextMismatch,
                      "conclusion is not a negated parameter formula");
      const PropFormula a = s.concl().prop().child();
      const DerivationStep& p = *s.prem[0];
      if (auto v = s.require_ctx_equal(p)) return v;
      if (p.sequent.conclusion != Formula::false_op(Formula::param(a)))
        return s.fail(RejectReason::ContextMismatch,
                      "premise is not the parameter formula under :false");
      return std::nullopt;
    }
    case Rule::RK: {
      if (s.concl().kind() != K::Param)
        return s.fail(RejectReason::NotParamFormula,
                      "conclusion is not a parameter formula");
      if (!derive_base(s.ctx(), s.concl().prop()))
        return s.fail(RejectReason::BaseOracleRefuted,
                      "the base calculus does not derive the conclusion");
      return std::nullopt;
    }
    case Rule::Unknown:
      return s.fail(RejectReason::UnknownRule, "unknown rule '" + step.rule_name + "'");
  }
  return s.fail(RejectReason::UnknownRule, "unknown rule");
}

inline int premise_arity(Rule r) {
  switch (r) {
    case Rule::R1:
    case Rule::R12:
    case Rule::R13:
    case Rule::RK: return 0;
    case Rule::R3:
    case Rule::R4:
    case Rule::R7:
    case Rule::R14: return 2;
    case Rule::Unknown: return -1;
    default: return 1;
  }
}

}  // namespace detail

/// Checks every step; failures are reported as verdicts, never thrown. The
/// earliest failing step wins. Contexts are treated as sets whether or not
/// the caller normalized them.
inline Verdict check_derivation(const Derivation& input) {
  Derivation d = input;
  for (DerivationStep& step : d.steps)
    step.sequent.context = normalize_context(std::move(step.sequent.context));
  std::map<int, const DerivationStep*> by_id;
  int last_id = 0;
  for (const DerivationStep& step : d.steps) {
    if (step.id <= last_id)
      return Verdict::fail(step.id, RejectReason::BadPremiseRef,
                           "step ids must be strictly increasing");
    last_id = step.id;
    if (step.rule == Rule::Unknown)
      return Verdict::fail(step.id, RejectReason::UnknownRule,
                           "unknown rule '" + step.rule_name + "'");
    const int arity = detail::premise_arity(step.rule);
    if (static_cast<int>(step.premises.size()) != arity)
      return Verdict::fail(step.id, RejectReason::BadPremiseRef,
                           to_string(step.rule) + " expects " + std::to_string(arity) +
                               " premise(s), got " + std::to_string(step.premises.size()));
    detail::StepCheck check{step, {}};
    for (int pid : step.premises) {
      auto it = by_id.find(pid);
      if (pid >= step.id || it == by_id.end())
        return Verdict::fail(step.id, RejectReason::BadPremiseRef,
                             "premise " + std::to_string(pid) + " does not name an "
                             "earlier step");
      check.prem.push_back(it->second);
    }
    if (step.rule != Rule::R8 && step.rule != Rule::R9 && step.rule != Rule::R10 &&
        !step.params.empty())
      return Verdict::fail(step.id, RejectReason::MalformedParams,
                           to_string(step.rule) + " takes no parameters");
    if (auto failure = detail::check_step(check)) return *failure;
    by_id[step.id] = &step;
  }
  return Verdict::ok();
}

/// Raw replacement of a constant by a variable. The constant can never be
/// bound and the variable is required to be globally fresh by the caller, so
/// no capture is possible and binders are left untouched.
inline Formula replace_constant(const Formula& f, const std::string& name, int var) {
  switch (f.kind()) {
    case Formula::Kind::Var:
    case Formula::Kind::Param: return f;
    case Formula::Kind::Const:
      return f.const_name() == name ? Formula::var(var) : f;
    case Formula::Kind::TrueOp:
      return Formula::true_op(replace_constant(f.child(), name, var));
    case Formula::Kind::FalseOp:
      return Formula::false_op(replace_constant(f.child(), name, var));
    case Formula::Kind::Or:
      return Formula::disj(replace_constant(f.left(), name, var),
                           replace_constant(f.right(), name, var));
    case Formula::Kind::And:
      return Formula::conj(replace_constant(f.left(), name, var),
                           replace_constant(f.right(), name, var));
    case Formula::Kind::Ident:
      return Formula::ident(replace_constant(f.left(), name, var),
                            replace_constant(f.right(), name, var));
    case Formula::Kind::Ref:
      return Formula::ref(replace_constant(f.left(), name, var),
                          replace_constant(f.right(), name, var));
    case Formula::Kind::Exists:
      return Formula::exists(f.var_index(), replace_constant(f.body(), name, var));
    case Formula::Kind::Forall:
      return Formula::forall(f.var_index(), replace_constant(f.body(), name, var));
  }
  throw std::logic_error("replace_constant: unreachable");
}

/// Renames a constant to a fresh variable throughout a derivation, including
/// inside witness and template parameters. Rule ids, premise structure and
/// variable parameters are preserved; the result checks whenever the input
/// does.
inline Derivation rename_constant(const Derivation& d, const std::string& constant,
                                  int variable) {
  std::set<int> used;
  for (const DerivationStep& step : d.steps) {
    for (const Formula& f : step.sequent.context) {
      const std::set<int> vs = all_vars(f);
      used.insert(vs.begin(), vs.end());
    }
    const std::set<int> vs = all_vars(step.sequent.conclusion);
    used.insert(vs.begin(), vs.end());
    for (const auto& [key, value] : step.params) {
      const std::set<int> pv = all_vars(value);
      used.insert(pv.begin(), pv.end());
    }
  }
  if (used.count(variable))
    throw std::invalid_argument("v" + std::to_string(variable) +
                                " already occurs in the derivation");
  Derivation out;
  out.steps.reserve(d.steps.size());
  for (const DerivationStep& step : d.steps) {
    DerivationStep ns = step;
    std::vector<Formula> ctx;
    ctx.reserve(step.sequent.context.size());
    for (const Formula& f : step.sequent.context)
      ctx.push_back(replace_constant(f, constant, variable));
    ns.sequent = make_sequent(std::move(ctx),
                              replace_constant(step.sequent.conclusion, constant, variable));
    for (auto& [key, value] : ns.params) value = replace_constant(value, constant, variable);
    out.steps.push_back(std::move(ns));
  }
  return out;
}

}  // namespace etl
