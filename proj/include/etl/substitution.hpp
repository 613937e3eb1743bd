#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "etl/formula.hpp"

namespace etl {

/// An atom a substitution may act on: a variable, a constant or an embedded
/// parameter expression.
using SubstAtom = std::variant<int, std::string, PropFormula>;

/// A finite-support mapping from atoms to formulas; identity everywhere else.
/// Bindings whose image equals the atom itself are dropped, so the support is
/// always minimal.
class Substitution {
 public:
  Substitution() = default;

  static Substitution identity() { return {}; }

  static Substitution map_var(int v, Formula image) {
    return Substitution().updated(v, std::move(image));
  }
  static Substitution map_const(std::string name, Formula image) {
    return Substitution().updated(SubstAtom(std::move(name)), std::move(image));
  }

  Formula operator()(const SubstAtom& u) const {
    if (const int* v = std::get_if<int>(&u)) {
      auto it = vars_.find(*v);
      return it == vars_.end() ? Formula::var(*v) : it->second;
    }
    if (const std::string* c = std::get_if<std::string>(&u)) {
      auto it = consts_.find(*c);
      return it == consts_.end() ? Formula::constant(*c) : it->second;
    }
    const PropFormula& p = std::get<PropFormula>(u);
    auto it = params_.find(p);
    return it == params_.end() ? Formula::param(p) : it->second;
  }

  Formula image_of_var(int v) const { return (*this)(SubstAtom(v)); }

  /// sigma[u := image]; an identity binding erases u from the support.
  Substitution updated(SubstAtom u, Formula image) const {
    Substitution out = *this;
    if (const int* v = std::get_if<int>(&u)) {
      if (image.kind() == Formula::Kind::Var && image.var_index() == *v)
        out.vars_.erase(*v);
      else
        out.vars_.insert_or_assign(*v, std::move(image));
      return out;
    }
    if (const std::string* c = std::get_if<std::string>(&u)) {
      if (image.kind() == Formula::Kind::Const && image.const_name() == *c)
        out.consts_.erase(*c);
      else
        out.consts_.insert_or_assign(*c, std::move(image));
      return out;
    }
    const PropFormula& p = std::get<PropFormula>(u);
    if (image.kind() == Formula::Kind::Param && image.prop() == p)
      out.params_.erase(p);
    else
      out.params_.insert_or_assign(p, std::move(image));
    return out;
  }

  bool is_identity() const {
    return vars_.empty() && consts_.empty() && params_.empty();
  }

  std::vector<std::pair<SubstAtom, Formula>> support() const {
    std::vector<std::pair<SubstAtom, Formula>> out;
    for (const auto& [v, f] : vars_) out.emplace_back(SubstAtom(v), f);
    for (const auto& [c, f] : consts_) out.emplace_back(SubstAtom(c), f);
    for (const auto& [p, f] : params_) out.emplace_back(SubstAtom(p), f);
    return out;
  }

  friend bool operator==(const Substitution& a, const Substitution& b) {
    return a.vars_ == b.vars_ && a.consts_ == b.consts_ && a.params_ == b.params_;
  }

 private:
  std::map<int, Formula> vars_;
  std::map<std::string, Formula> consts_;
  std::map<PropFormula, Formula> params_;
};

/// The variable forced by `sigma` with respect to a quantified formula: the
/// least variable not free in any sigma-image of the binder's free atoms.
inline int forced_variable(const Substitution& sigma, const Formula& binder) {
  if (!binder.is_binder())
    throw std::invalid_argument("forced_variable: formula is not a quantifier");
  const AtomSets atoms = atom_sets(binder);
  std::set<int> excluded;
  auto add = [&](const Formula& image) {
    for (int v : free_vars(image)) excluded.insert(v);
  };
  for (int v : atoms.vars) add(sigma(SubstAtom(v)));
  for (const std::string& c : atoms.consts) add(sigma(SubstAtom(c)));
  for (const PropFormula& p : atoms.params) add(sigma(SubstAtom(p)));
  int candidate = 0;
  while (excluded.count(candidate)) ++candidate;
  return candidate;
}

/// Capture-avoiding application: homomorphic on connectives, sigma on atoms;
/// a binder Qx.f becomes Qy.(f[sigma[x := y]]) with y the forced variable.
inline Formula apply_substitution(const Substitution& sigma, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Var: return sigma(SubstAtom(f.var_index()));
    case Formula::Kind::Const: return sigma(SubstAtom(f.const_name()));
    case Formula::Kind::Param: return sigma(SubstAtom(f.prop()));
    case Formula::Kind::TrueOp: return Formula::true_op(apply_substitution(sigma, f.child()));
    case Formula::Kind::FalseOp:
      return Formula::false_op(apply_substitution(sigma, f.child()));
    case Formula::Kind::Or:
      return Formula::disj(apply_substitution(sigma, f.left()),
                           apply_substitution(sigma, f.right()));
    case Formula::Kind::And:
      return Formula::conj(apply_substitution(sigma, f.left()),
                           apply_substitution(sigma, f.right()));
    case Formula::Kind::Ident:
      return Formula::ident(apply_substitution(sigma, f.left()),
                            apply_substitution(sigma, f.right()));
    case Formula::Kind::Ref:
      return Formula::ref(apply_substitution(sigma, f.left()),
                          apply_substitution(sigma, f.right()));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      const int y = forced_variable(sigma, f);
      const Substitution inner = sigma.updated(SubstAtom(f.var_index()), Formula::var(y));
      Formula body = apply_substitution(inner, f.body());
      return f.kind() == Formula::Kind::Exists ? Formula::exists(y, std::move(body))
                                               : Formula::forall(y, std::move(body));
    }
  }
  throw std::logic_error("apply_substitution: unreachable");
}

inline Formula atom_to_formula(const SubstAtom& u) {
  if (const int* v = std::get_if<int>(&u)) return Formula::var(*v);
  if (const std::string* c = std::get_if<std::string>(&u)) return Formula::constant(*c);
  return Formula::param(std::get<PropFormula>(u));
}

/// (sigma . tau)(u) = sigma(u)[tau]; f[sigma . tau] is alpha-congruent to
/// f[sigma][tau].
inline Substitution compose(const Substitution& sigma, const Substitution& tau) {
  Substitution out;
  for (const auto& [u, image] : sigma.support())
    out = out.updated(u, apply_substitution(tau, image));
  for (const auto& [u, image] : tau.support()) {
    // Atoms moved by tau but untouched by sigma.
    if (sigma(u) == atom_to_formula(u)) out = out.updated(u, image);
  }
  return out;
}

namespace detail {

inline bool alpha_eq(const Formula& f, const Formula& g,
                     std::vector<std::pair<int, int>>& binders) {
  if (f.kind() != g.kind()) return false;
  switch (f.kind()) {
    case Formula::Kind::Var: {
      const int x = f.var_index(), y = g.var_index();
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
        if (it->first == x || it->second == y) return it->first == x && it->second == y;
      }
      return x == y;
    }
    case Formula::Kind::Const: return f.const_name() == g.const_name();
    case Formula::Kind::Param: return f.prop() == g.prop();
    case Formula::Kind::TrueOp:
    case Formula::Kind::FalseOp: return alpha_eq(f.child(), g.child(), binders);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      binders.emplace_back(f.var_index(), g.var_index());
      bool ok = alpha_eq(f.body(), g.body(), binders);
      binders.pop_back();
      return ok;
    }
    default:
      return alpha_eq(f.left(), g.left(), binders) &&
             alpha_eq(f.right(), g.right(), binders);
  }
}

}  // namespace detail

/// Identical up to consistent renaming of bound variables; free atoms,
/// including parameter expressions, must match exactly.
inline bool alpha_congruent(const Formula& f, const Formula& g) {
  std::vector<std::pair<int, int>> binders;
  return detail::alpha_eq(f, g, binders);
}

namespace detail {

// Walks the proper subformula occurrences of `g`, tracking the variables
// bound by enclosing binders at each occurrence.
inline bool refers_scan(const Formula& f, const Formula& g, std::set<int>& enclosing,
                        bool is_root) {
  if (!is_root) {
    bool captured = false;
    for (int v : free_vars(g)) {
      if (enclosing.count(v)) {
        captured = true;
        break;
      }
    }
    if (!captured && alpha_congruent(f, g)) return true;
  }
  switch (g.kind()) {
    case Formula::Kind::Var:
    case Formula::Kind::Const:
    case Formula::Kind::Param: return false;
    case Formula::Kind::TrueOp:
    case Formula::Kind::FalseOp: return refers_scan(f, g.child(), enclosing, false);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      const bool fresh = enclosing.insert(g.var_index()).second;
      const bool found = refers_scan(f, g.body(), enclosing, false);
      if (fresh) enclosing.erase(g.var_index());
      return found;
    }
    default:
      return refers_scan(f, g.left(), enclosing, false) ||
             refers_scan(f, g.right(), enclosing, false);
  }
}

}  // namespace detail

/// Syntactical reference f < g: f is alpha-congruent to a proper subformula
/// of g every free variable occurrence of which remains free in g.
inline bool syntactic_reference(const Formula& f, const Formula& g) {
  std::set<int> enclosing;
  return detail::refers_scan(f, g, enclosing, true);
}

}  // namespace etl
