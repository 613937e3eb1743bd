#pragma once

#include <string>

#include "etl/formula.hpp"
#include "etl/prop_formula.hpp"

namespace etl {

namespace detail {

// Binding strength inside parameter expressions: => < | < & < ~ < atom.
inline int prop_level(const PropFormula& p) {
  switch (p.kind()) {
    case PropFormula::Kind::Implies: return 1;
    case PropFormula::Kind::Or: return 2;
    case PropFormula::Kind::And: return 3;
    case PropFormula::Kind::Not: return 4;
    case PropFormula::Kind::Atom: return 5;
  }
  return 5;
}

inline void render_prop(const PropFormula& p, int min_level, std::string& out) {
  const int level = prop_level(p);
  const bool parens = level < min_level;
  if (parens) out += '(';
  switch (p.kind()) {
    case PropFormula::Kind::Atom:
      out += 'p';
      out += std::to_string(p.atom_index());
      break;
    case PropFormula::Kind::Not:
      out += '~';
      render_prop(p.child(), 4, out);
      break;
    case PropFormula::Kind::And:
      render_prop(p.left(), 3, out);
      out += " & ";
      render_prop(p.right(), 4, out);
      break;
    case PropFormula::Kind::Or:
      render_prop(p.left(), 2, out);
      out += " | ";
      render_prop(p.right(), 3, out);
      break;
    case PropFormula::Kind::Implies:
      render_prop(p.left(), 2, out);
      out += " => ";
      render_prop(p.right(), 1, out);
      break;
  }
  if (parens) out += ')';
}

// Binding strength of the truth-operator language: quantifiers bind the whole
// rest of the expression; == and < are the loosest binary connectives, then
// \/, then /\, then the postfix operators.
inline int formula_level(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: return 0;
    case Formula::Kind::Ident:
    case Formula::Kind::Ref: return 1;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::And: return 4;
    case Formula::Kind::TrueOp:
    case Formula::Kind::FalseOp: return 5;
    default: return 6;
  }
}

inline bool is_postfix(const Formula& f) {
  return f.kind() == Formula::Kind::TrueOp || f.kind() == Formula::Kind::FalseOp;
}

// `paren_postfix` wraps a postfix operand of a binary connective, the
// canonical spelling: `$c == ($c :false)` rather than `$c == $c :false`.
inline void render(const Formula& f, int min_level, bool paren_postfix, std::string& out) {
  const bool parens = formula_level(f) < min_level || (paren_postfix && is_postfix(f));
  if (parens) out += '(';
  switch (f.kind()) {
    case Formula::Kind::Var:
      out += 'v';
      out += std::to_string(f.var_index());
      break;
    case Formula::Kind::Const:
      out += '$';
      out += f.const_name();
      break;
    case Formula::Kind::Param:
      out += '{';
      render_prop(f.prop(), 0, out);
      out += '}';
      break;
    case Formula::Kind::TrueOp:
      render(f.child(), 5, false, out);
      out += " :true";
      break;
    case Formula::Kind::FalseOp:
      render(f.child(), 5, false, out);
      out += " :false";
      break;
    case Formula::Kind::And:
      render(f.left(), 4, true, out);
      out += " /\\ ";
      render(f.right(), 5, true, out);
      break;
    case Formula::Kind::Or:
      render(f.left(), 3, true, out);
      out += " \\/ ";
      render(f.right(), 4, true, out);
      break;
    case Formula::Kind::Ident:
      render(f.left(), 3, true, out);
      out += " == ";
      render(f.right(), 3, true, out);
      break;
    case Formula::Kind::Ref:
      render(f.left(), 3, true, out);
      out += " < ";
      render(f.right(), 3, true, out);
      break;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      out += f.kind() == Formula::Kind::Exists ? "ex v" : "all v";
      out += std::to_string(f.var_index());
      out += " . ";
      render(f.body(), 0, false, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace detail

inline std::string render_prop(const PropFormula& p) {
  std::string out;
  detail::render_prop(p, 0, out);
  return out;
}

/// Concrete text for `f`; parse_formula(render_formula(f)) is structurally `f`.
inline std::string render_formula(const Formula& f) {
  std::string out;
  detail::render(f, 0, false, out);
  return out;
}

}  // namespace etl
