#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "etl/prop_formula.hpp"

namespace etl {

/// A formula of the truth-operator language: variables v0, v1, ..., named
/// constants, embedded parameter-logic formulas, the postfix truth and
/// falsity operators, disjunction, conjunction, propositional identity,
/// the reference connective and the two quantifiers.
class Formula {
 public:
  enum class Kind {
    Var,      // vN
    Const,    // $name
    Param,    // { prop }
    TrueOp,   // f :true
    FalseOp,  // f :false
    Or,       // f \/ g
    And,      // f /\ g
    Ident,    // f == g
    Ref,      // f < g
    Exists,   // ex vN . f
    Forall,   // all vN . f
  };

  static Formula var(int index) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->var = index;
    return Formula(std::move(n));
  }

  static Formula constant(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    n->name = std::move(name);
    return Formula(std::move(n));
  }

  static Formula param(PropFormula p) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Param;
    n->prop = std::move(p);
    return Formula(std::move(n));
  }

  static Formula true_op(Formula f) { return unary(Kind::TrueOp, std::move(f)); }
  static Formula false_op(Formula f) { return unary(Kind::FalseOp, std::move(f)); }
  static Formula disj(Formula f, Formula g) {
    return binary(Kind::Or, std::move(f), std::move(g));
  }
  static Formula conj(Formula f, Formula g) {
    return binary(Kind::And, std::move(f), std::move(g));
  }
  static Formula ident(Formula f, Formula g) {
    return binary(Kind::Ident, std::move(f), std::move(g));
  }
  static Formula ref(Formula f, Formula g) {
    return binary(Kind::Ref, std::move(f), std::move(g));
  }

  static Formula exists(int var, Formula body) {
    return quantifier(Kind::Exists, var, std::move(body));
  }
  static Formula forall(int var, Formula body) {
    return quantifier(Kind::Forall, var, std::move(body));
  }

  /// `f -> g` is an abbreviation and is expanded on construction.
  static Formula arrow(Formula f, Formula g) {
    return disj(false_op(std::move(f)), std::move(g));
  }

  Kind kind() const { return n_->kind; }
  bool is_binder() const { return kind() == Kind::Exists || kind() == Kind::Forall; }

  int var_index() const { return n_->var; }        // Var, Exists, Forall
  const std::string& const_name() const { return n_->name; }
  const PropFormula& prop() const { return n_->prop; }

  Formula child() const { return Formula(n_->a); }  // TrueOp, FalseOp, binders
  Formula left() const { return Formula(n_->a); }
  Formula right() const { return Formula(n_->b); }
  Formula body() const { return Formula(n_->a); }

  static int compare(const Formula& x, const Formula& y) {
    if (x.n_ == y.n_) return 0;
    if (x.kind() != y.kind()) return x.kind() < y.kind() ? -1 : 1;
    switch (x.kind()) {
      case Kind::Var:
        return x.var_index() == y.var_index() ? 0 : x.var_index() < y.var_index() ? -1 : 1;
      case Kind::Const:
        return x.const_name().compare(y.const_name()) < 0   ? -1
               : x.const_name().compare(y.const_name()) > 0 ? 1
                                                            : 0;
      case Kind::Param:
        return PropFormula::compare(x.prop(), y.prop());
      case Kind::TrueOp:
      case Kind::FalseOp:
        return compare(x.child(), y.child());
      case Kind::Exists:
      case Kind::Forall: {
        if (x.var_index() != y.var_index()) return x.var_index() < y.var_index() ? -1 : 1;
        return compare(x.body(), y.body());
      }
      default: {
        int c = compare(x.left(), y.left());
        return c != 0 ? c : compare(x.right(), y.right());
      }
    }
  }

  friend bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Formula& a, const Formula& b) { return compare(a, b) != 0; }
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

  std::size_t size() const {
    switch (kind()) {
      case Kind::Var:
      case Kind::Const:
      case Kind::Param: return 1;
      case Kind::TrueOp:
      case Kind::FalseOp:
      case Kind::Exists:
      case Kind::Forall: return 1 + child().size();
      default: return 1 + left().size() + right().size();
    }
  }

 private:
  struct Node {
    Kind kind;
    int var = -1;
    std::string name;
    PropFormula prop = PropFormula::atom(0);
    std::shared_ptr<const Node> a, b;
  };

  explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

  static Formula unary(Kind k, Formula f) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = f.n_;
    return Formula(std::move(n));
  }

  static Formula binary(Kind k, Formula f, Formula g) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = f.n_;
    n->b = g.n_;
    return Formula(std::move(n));
  }

  static Formula quantifier(Kind k, int var, Formula body) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->var = var;
    n->a = body.n_;
    return Formula(std::move(n));
  }

  std::shared_ptr<const Node> n_;
};

/// The atoms a formula is built from, as used by substitutions: its free
/// variables, its constants and its embedded parameter expressions.
struct AtomSets {
  std::set<int> vars;
  std::set<std::string> consts;
  std::set<PropFormula> params;
};

namespace detail {

inline void collect_free_vars(const Formula& f, std::set<int> bound, std::set<int>& out) {
  switch (f.kind()) {
    case Formula::Kind::Var:
      if (!bound.count(f.var_index())) out.insert(f.var_index());
      return;
    case Formula::Kind::Const:
    case Formula::Kind::Param: return;
    case Formula::Kind::TrueOp:
    case Formula::Kind::FalseOp:
      collect_free_vars(f.child(), bound, out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bound.insert(f.var_index());
      collect_free_vars(f.body(), std::move(bound), out);
      return;
    }
    default:
      collect_free_vars(f.left(), bound, out);
      collect_free_vars(f.right(), std::move(bound), out);
      return;
  }
}

inline void collect_atoms(const Formula& f, std::set<int>& bound, AtomSets& out) {
  switch (f.kind()) {
    case Formula::Kind::Var:
      if (!bound.count(f.var_index())) out.vars.insert(f.var_index());
      return;
    case Formula::Kind::Const: out.consts.insert(f.const_name()); return;
    case Formula::Kind::Param: out.params.insert(f.prop()); return;
    case Formula::Kind::TrueOp:
    case Formula::Kind::FalseOp:
      collect_atoms(f.child(), bound, out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool fresh = bound.insert(f.var_index()).second;
      collect_atoms(f.body(), bound, out);
      if (fresh) bound.erase(f.var_index());
      return;
    }
    default:
      collect_atoms(f.left(), bound, out);
      collect_atoms(f.right(), bound, out);
      return;
  }
}

inline void collect_all_vars(const Formula& f, std::set<int>& out) {
  switch (f.kind()) {
    case Formula::Kind::Var: out.insert(f.var_index()); return;
    case Formula::Kind::Const:
    case Formula::Kind::Param: return;
    case Formula::Kind::TrueOp:
    case Formula::Kind::FalseOp: collect_all_vars(f.child(), out); return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      out.insert(f.var_index());
      collect_all_vars(f.body(), out);
      return;
    default:
      collect_all_vars(f.left(), out);
      collect_all_vars(f.right(), out);
      return;
  }
}

inline void collect_subformulas(const Formula& f, std::vector<Formula>& out) {
  out.push_back(f);
  switch (f.kind()) {
    case Formula::Kind::Var:
    case Formula::Kind::Const:
    case Formula::Kind::Param: return;
    case Formula::Kind::TrueOp:
    case Formula::Kind::FalseOp:
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      collect_subformulas(f.child(), out);
      return;
    default:
      collect_subformulas(f.left(), out);
      collect_subformulas(f.right(), out);
      return;
  }
}

}  // namespace detail

inline std::set<int> free_vars(const Formula& f) {
  std::set<int> out;
  detail::collect_free_vars(f, {}, out);
  return out;
}

/// Free variables, constants and parameter expressions of `f`; constants and
/// parameter expressions can never be bound.
inline AtomSets atom_sets(const Formula& f) {
  AtomSets out;
  std::set<int> bound;
  detail::collect_atoms(f, bound, out);
  return out;
}

/// All variables occurring in `f`, free or bound (including binder variables).
inline std::set<int> all_vars(const Formula& f) {
  std::set<int> out;
  detail::collect_all_vars(f, out);
  return out;
}

inline std::set<std::string> constants(const Formula& f) { return atom_sets(f).consts; }
inline std::set<PropFormula> param_exprs(const Formula& f) { return atom_sets(f).params; }

/// All subtrees of `f` including `f` itself, in pre-order.
inline std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  detail::collect_subformulas(f, out);
  return out;
}

/// A formula is intended when every quantified subformula binds a variable
/// that is free in its body. Unintended formulas still parse and evaluate.
inline bool is_intended(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Var:
    case Formula::Kind::Const:
    case Formula::Kind::Param: return true;
    case Formula::Kind::TrueOp:
    case Formula::Kind::FalseOp: return is_intended(f.child());
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      return free_vars(f.body()).count(f.var_index()) != 0 && is_intended(f.body());
    default: return is_intended(f.left()) && is_intended(f.right());
  }
}

}  // namespace etl
