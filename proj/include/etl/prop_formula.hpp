#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>

namespace etl {

enum class TruthValue : std::uint8_t;
class Valuation;
class PropFormula;
TruthValue eval_param(const Valuation& v, const PropFormula& a);

/// A formula of the parameter logic: classical propositional logic over the
/// indexed atoms p0, p1, ... with negation, conjunction, disjunction and a
/// (definable) implication connective.
///
/// Values are immutable trees behind shared pointers; copying is cheap and
/// all operations are pure.
class PropFormula {
 public:
  enum class Kind { Atom, Not, And, Or, Implies };

  static PropFormula atom(int index) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    n->atom = index;
    return PropFormula(std::move(n));
  }

  static PropFormula negation(PropFormula a) { return unary(Kind::Not, std::move(a)); }
  static PropFormula conj(PropFormula a, PropFormula b) {
    return binary(Kind::And, std::move(a), std::move(b));
  }
  static PropFormula disj(PropFormula a, PropFormula b) {
    return binary(Kind::Or, std::move(a), std::move(b));
  }
  static PropFormula implies(PropFormula a, PropFormula b) {
    return binary(Kind::Implies, std::move(a), std::move(b));
  }

  Kind kind() const { return n_->kind; }

  int atom_index() const { return n_->atom; }

  PropFormula child() const { return PropFormula(n_->a); }
  PropFormula left() const { return PropFormula(n_->a); }
  PropFormula right() const { return PropFormula(n_->b); }

  /// Total structural order; used for deterministic sets and maps.
  static int compare(const PropFormula& x, const PropFormula& y) {
    if (x.n_ == y.n_) return 0;
    if (x.kind() != y.kind()) return x.kind() < y.kind() ? -1 : 1;
    switch (x.kind()) {
      case Kind::Atom:
        return x.atom_index() == y.atom_index() ? 0
               : x.atom_index() < y.atom_index() ? -1
                                                 : 1;
      case Kind::Not:
        return compare(x.child(), y.child());
      default: {
        int c = compare(x.left(), y.left());
        return c != 0 ? c : compare(x.right(), y.right());
      }
    }
  }

  friend bool operator==(const PropFormula& a, const PropFormula& b) {
    return compare(a, b) == 0;
  }
  friend bool operator!=(const PropFormula& a, const PropFormula& b) {
    return compare(a, b) != 0;
  }
  friend bool operator<(const PropFormula& a, const PropFormula& b) {
    return compare(a, b) < 0;
  }

  void collect_atoms(std::set<int>& out) const {
    switch (kind()) {
      case Kind::Atom: out.insert(atom_index()); return;
      case Kind::Not: child().collect_atoms(out); return;
      default:
        left().collect_atoms(out);
        right().collect_atoms(out);
        return;
    }
  }

  std::set<int> atoms() const {
    std::set<int> out;
    collect_atoms(out);
    return out;
  }

  std::size_t size() const {
    switch (kind()) {
      case Kind::Atom: return 1;
      case Kind::Not: return 1 + child().size();
      default: return 1 + left().size() + right().size();
    }
  }

 private:
  struct Node {
    Kind kind;
    int atom = -1;
    std::shared_ptr<const Node> a, b;
  };

  // Evaluation recurses on raw nodes; this is the hot path of the
  // enumeration-based consequence checks.
  friend TruthValue eval_param(const Valuation& v, const PropFormula& a);

  explicit PropFormula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

  static PropFormula unary(Kind k, PropFormula a) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = a.n_;
    return PropFormula(std::move(n));
  }

  static PropFormula binary(Kind k, PropFormula a, PropFormula b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = a.n_;
    n->b = b.n_;
    return PropFormula(std::move(n));
  }

  std::shared_ptr<const Node> n_;
};

}  // namespace etl
