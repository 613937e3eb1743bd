#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "etl/prop_formula.hpp"
#include "etl/truth_value.hpp"

namespace etl {

/// A flavor-tagged mapping from parameter atoms to truth values. Atoms
/// outside the explicit domain take the declared fill value. Through the
/// designated/antidesignated split a valuation stands for a complete theory
/// together with its complement.
class Valuation {
 public:
  Valuation(Flavor flavor, std::map<int, TruthValue> values,
            TruthValue fill = TruthValue::Zero)
      : flavor_(flavor), values_(std::move(values)), fill_(fill) {
    if (!flavor_permits(flavor_, fill_))
      throw std::invalid_argument("valuation fill value not permitted by flavor " +
                                  to_string(flavor_));
    for (const auto& [atom, v] : values_) {
      if (!flavor_permits(flavor_, v))
        throw std::invalid_argument("value of p" + std::to_string(atom) +
                                    " not permitted by flavor " + to_string(flavor_));
    }
  }

  explicit Valuation(Flavor flavor) : Valuation(flavor, {}) {}

  Flavor flavor() const { return flavor_; }
  TruthValue fill() const { return fill_; }
  const std::map<int, TruthValue>& explicit_values() const { return values_; }

  TruthValue operator()(int atom) const {
    auto it = values_.find(atom);
    return it == values_.end() ? fill_ : it->second;
  }

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.flavor_ == b.flavor_ && a.fill_ == b.fill_ && a.values_ == b.values_;
  }
  friend bool operator<(const Valuation& a, const Valuation& b) {
    if (a.flavor_ != b.flavor_) return a.flavor_ < b.flavor_;
    if (a.fill_ != b.fill_) return a.fill_ < b.fill_;
    return a.values_ < b.values_;
  }

 private:
  Flavor flavor_;
  std::map<int, TruthValue> values_;
  TruthValue fill_;
};

namespace detail {

template <typename Node>
TruthValue eval_prop_node(const Valuation& v, const Node* n) {
  switch (n->kind) {
    case PropFormula::Kind::Atom: return v(n->atom);
    case PropFormula::Kind::Not: return negate(eval_prop_node(v, n->a.get()));
    case PropFormula::Kind::And:
      return meet(eval_prop_node(v, n->a.get()), eval_prop_node(v, n->b.get()));
    case PropFormula::Kind::Or:
      return join(eval_prop_node(v, n->a.get()), eval_prop_node(v, n->b.get()));
    case PropFormula::Kind::Implies:
      return join(negate(eval_prop_node(v, n->a.get())), eval_prop_node(v, n->b.get()));
  }
  throw std::logic_error("eval_param: unreachable");
}

}  // namespace detail

/// Homomorphic evaluation over the De Morgan lattice; a => b evaluates as
/// ~a | b.
inline TruthValue eval_param(const Valuation& v, const PropFormula& a) {
  return detail::eval_prop_node(v, a.n_.get());
}

struct Membership {
  bool in_theory = false;      // a is in A
  bool in_complement = false;  // a is in the complement of A
};

/// Membership of `a` in the complete theory the valuation stands for, and in
/// that theory's complement.
inline Membership theory_membership(const Valuation& v, const PropFormula& a) {
  const TruthValue t = eval_param(v, a);
  return {designated(t), antidesignated(t)};
}

enum class TheoryClass { Classical, K3Proper, P3Proper, B4Proper };

inline std::string to_string(TheoryClass c) {
  switch (c) {
    case TheoryClass::Classical: return "classical";
    case TheoryClass::K3Proper: return "k3-proper";
    case TheoryClass::P3Proper: return "p3-proper";
    case TheoryClass::B4Proper: return "b4-proper";
  }
  return "?";
}

/// Classification by the values the valuation actually takes (explicit domain
/// plus the fill value): gaps only make it K3-proper, gluts only P3-proper,
/// both B4-proper, neither classical.
inline TheoryClass classify_theory(const Valuation& v) {
  bool has_gap = v.fill() == TruthValue::Neither;
  bool has_glut = v.fill() == TruthValue::Both;
  for (const auto& [atom, value] : v.explicit_values()) {
    has_gap = has_gap || value == TruthValue::Neither;
    has_glut = has_glut || value == TruthValue::Both;
  }
  if (has_gap && has_glut) return TheoryClass::B4Proper;
  if (has_gap) return TheoryClass::K3Proper;
  if (has_glut) return TheoryClass::P3Proper;
  return TheoryClass::Classical;
}

/// True when the valuation only takes values a flavor permits, i.e. the
/// induced theory is a complete theory of that flavor.
inline bool fits_flavor(const Valuation& v, Flavor f) {
  if (!flavor_permits(f, v.fill())) return false;
  for (const auto& [atom, value] : v.explicit_values())
    if (!flavor_permits(f, value)) return false;
  return true;
}

}  // namespace etl
