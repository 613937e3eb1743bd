#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "etl/formula.hpp"
#include "etl/substitution.hpp"
#include "etl/truth_value.hpp"
#include "etl/valuation.hpp"

namespace etl {

/// The model shapes of the extensional family: the four flavored universes
/// plus the two degenerate one-element models.
enum class ModelKind { Classical, K3, P3, B4, UnitEmpty, UnitFull };

inline std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Classical: return "classical";
    case ModelKind::K3: return "k3";
    case ModelKind::P3: return "p3";
    case ModelKind::B4: return "b4";
    case ModelKind::UnitEmpty: return "unit-empty";
    case ModelKind::UnitFull: return "unit-full";
  }
  return "?";
}

inline std::optional<ModelKind> parse_model_kind(const std::string& name) {
  if (auto f = parse_flavor(name)) {
    switch (*f) {
      case Flavor::Classical: return ModelKind::Classical;
      case Flavor::K3: return ModelKind::K3;
      case Flavor::P3: return ModelKind::P3;
      case Flavor::B4: return ModelKind::B4;
    }
  }
  if (name == "unit-empty") return ModelKind::UnitEmpty;
  if (name == "unit-full") return ModelKind::UnitFull;
  return std::nullopt;
}

/// A mapping from variables to propositions (elements of the model universe),
/// with a declared default for unmapped variables.
class Assignment {
 public:
  explicit Assignment(TruthValue fill = TruthValue::Zero, std::map<int, TruthValue> map = {})
      : fill_(fill), map_(std::move(map)) {}

  TruthValue operator()(int var) const {
    auto it = map_.find(var);
    return it == map_.end() ? fill_ : it->second;
  }

  /// gamma with x remapped to m.
  Assignment with(int var, TruthValue m) const {
    Assignment out = *this;
    out.map_[var] = m;
    return out;
  }

  TruthValue fill() const { return fill_; }
  const std::map<int, TruthValue>& explicit_values() const { return map_; }

 private:
  TruthValue fill_;
  std::map<int, TruthValue> map_;
};

/// An extensional model: the universe is a sublattice of the four truth
/// values, a proposition's denotation is its truth value, TRUE/FALSE are the
/// designated/antidesignated members, and reference is the total relation.
class ExtensionalModel {
 public:
  ExtensionalModel(ModelKind kind, Valuation theory,
                   std::map<std::string, TruthValue> constant_partition)
      : kind_(kind), theory_(std::move(theory)), consts_(std::move(constant_partition)) {
    switch (kind_) {
      case ModelKind::Classical: universe_ = flavor_values(Flavor::Classical); break;
      case ModelKind::K3: universe_ = flavor_values(Flavor::K3); break;
      case ModelKind::P3: universe_ = flavor_values(Flavor::P3); break;
      case ModelKind::B4: universe_ = flavor_values(Flavor::B4); break;
      case ModelKind::UnitEmpty: universe_ = {TruthValue::Neither}; break;
      case ModelKind::UnitFull: universe_ = {TruthValue::Both}; break;
    }
    validate();
  }

  ModelKind kind() const { return kind_; }
  bool is_unit() const {
    return kind_ == ModelKind::UnitEmpty || kind_ == ModelKind::UnitFull;
  }

  /// The universe M, ascending in the declared value order.
  const std::vector<TruthValue>& universe() const { return universe_; }

  bool in_universe(TruthValue m) const {
    for (TruthValue u : universe_)
      if (u == m) return true;
    return false;
  }

  /// Membership in the TRUE / FALSE subsets of M.
  bool in_true(TruthValue m) const { return designated(m); }
  bool in_false(TruthValue m) const { return antidesignated(m); }

  const Valuation& theory() const { return theory_; }
  const std::map<std::string, TruthValue>& constant_partition() const { return consts_; }

  TruthValue constant_value(const std::string& name) const {
    auto it = consts_.find(name);
    if (it == consts_.end())
      throw std::invalid_argument("unknown constant $" + name + " in model");
    return it->second;
  }

  std::string describe() const {
    std::string out = "flavor=" + to_string(kind_) + " theory{";
    bool first = true;
    for (const auto& [atom, v] : theory_.explicit_values()) {
      if (!first) out += ' ';
      first = false;
      out += 'p' + std::to_string(atom) + '=' + to_char(v);
    }
    out += "} consts{";
    first = true;
    for (const auto& [name, v] : consts_) {
      if (!first) out += ' ';
      first = false;
      out += '$' + name + '=' + to_char(v);
    }
    out += "} default=";
    out += to_char(theory_.fill());
    return out;
  }

 private:
  void validate() const {
    auto require = [&](TruthValue v, const std::string& what) {
      if (!in_universe(v))
        throw std::invalid_argument(what + " value " + to_char(v) +
                                    " lies outside the " + to_string(kind_) +
                                    " universe");
    };
    require(theory_.fill(), "theory default");
    for (const auto& [atom, v] : theory_.explicit_values())
      require(v, "theory atom p" + std::to_string(atom));
    for (const auto& [name, v] : consts_) require(v, "constant $" + name);
  }

  ModelKind kind_;
  Valuation theory_;
  std::map<std::string, TruthValue> consts_;
  std::vector<TruthValue> universe_;
};

/// Builds a model of the requested shape over the given theory and constant
/// partition; rejects value/shape mismatches with a diagnostic.
inline ExtensionalModel build_model(ModelKind kind, Valuation theory,
                                    std::map<std::string, TruthValue> constant_partition) {
  return ExtensionalModel(kind, std::move(theory), std::move(constant_partition));
}

/// Convenience builders for the two one-element models; the underlying
/// theories are the empty theory and the theory of all expressions.
inline ExtensionalModel unit_empty_model(std::set<std::string> constants = {}) {
  std::map<std::string, TruthValue> consts;
  for (const std::string& c : constants) consts[c] = TruthValue::Neither;
  return ExtensionalModel(ModelKind::UnitEmpty,
                          Valuation(Flavor::B4, {}, TruthValue::Neither), std::move(consts));
}

inline ExtensionalModel unit_full_model(std::set<std::string> constants = {}) {
  std::map<std::string, TruthValue> consts;
  for (const std::string& c : constants) consts[c] = TruthValue::Both;
  return ExtensionalModel(ModelKind::UnitFull,
                          Valuation(Flavor::B4, {}, TruthValue::Both), std::move(consts));
}

/// The Gamma function of the extensional construction, computed exactly.
/// Quantifiers take suprema/infima over the finite universe; identity and
/// reference denote 1/0 except in the one-element models, where every
/// formula denotes the single proposition.
inline TruthValue eval_gamma(const ExtensionalModel& m, const Formula& f,
                             const Assignment& gamma) {
  switch (f.kind()) {
    case Formula::Kind::Var: {
      const TruthValue v = gamma(f.var_index());
      if (!m.in_universe(v))
        throw std::invalid_argument("assignment maps v" + std::to_string(f.var_index()) +
                                    " outside the model universe");
      return v;
    }
    case Formula::Kind::Const: return m.constant_value(f.const_name());
    case Formula::Kind::Param: return eval_param(m.theory(), f.prop());
    case Formula::Kind::TrueOp: return eval_gamma(m, f.child(), gamma);
    case Formula::Kind::FalseOp: return negate(eval_gamma(m, f.child(), gamma));
    case Formula::Kind::Or:
      return join(eval_gamma(m, f.left(), gamma), eval_gamma(m, f.right(), gamma));
    case Formula::Kind::And:
      return meet(eval_gamma(m, f.left(), gamma), eval_gamma(m, f.right(), gamma));
    case Formula::Kind::Ident: {
      const TruthValue a = eval_gamma(m, f.left(), gamma);
      const TruthValue b = eval_gamma(m, f.right(), gamma);
      if (m.is_unit()) return m.universe().front();
      return a == b ? TruthValue::One : TruthValue::Zero;
    }
    case Formula::Kind::Ref: {
      eval_gamma(m, f.left(), gamma);
      eval_gamma(m, f.right(), gamma);
      if (m.is_unit()) return m.universe().front();
      return TruthValue::One;  // the reference relation is M x M
    }
    case Formula::Kind::Exists: {
      TruthValue acc = m.universe().front();
      bool first = true;
      for (TruthValue v : m.universe()) {
        const TruthValue t = eval_gamma(m, f.body(), gamma.with(f.var_index(), v));
        acc = first ? t : join(acc, t);
        first = false;
      }
      return acc;
    }
    case Formula::Kind::Forall: {
      TruthValue acc = m.universe().front();
      bool first = true;
      for (TruthValue v : m.universe()) {
        const TruthValue t = eval_gamma(m, f.body(), gamma.with(f.var_index(), v));
        acc = first ? t : meet(acc, t);
        first = false;
      }
      return acc;
    }
  }
  throw std::logic_error("eval_gamma: unreachable");
}

/// Satisfaction: the denotation lies in TRUE. The unit models need no special
/// case: their single element is in TRUE for UnitFull and outside it for
/// UnitEmpty.
inline bool satisfies(const ExtensionalModel& m, const Assignment& gamma, const Formula& f) {
  return m.in_true(eval_gamma(m, f, gamma));
}

/// gamma-sigma: the assignment x |-> Gamma(sigma(x), gamma).
inline Assignment assignment_after(const ExtensionalModel& m, const Assignment& gamma,
                                   const Substitution& sigma) {
  Assignment out = gamma;
  for (const auto& [atom, image] : sigma.support()) {
    if (const int* v = std::get_if<int>(&atom))
      out = out.with(*v, eval_gamma(m, image, gamma));
  }
  return out;
}

/// The Substitution Property at one instance:
/// Gamma(f[sigma], gamma) = Gamma(f, gamma-sigma).
inline bool verify_substitution_property(const ExtensionalModel& m, const Formula& f,
                                         const Substitution& sigma, const Assignment& gamma) {
  const TruthValue lhs = eval_gamma(m, apply_substitution(sigma, f), gamma);
  const TruthValue rhs = eval_gamma(m, f, assignment_after(m, gamma, sigma));
  return lhs == rhs;
}

}  // namespace etl
