#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "etl/model.hpp"
#include "etl/parse.hpp"
#include "etl/substitution.hpp"
#include "etl/truth_value.hpp"
#include "etl/valuation.hpp"

namespace etl {

namespace detail {

inline std::vector<std::pair<std::string, SourceSpan>> split_ws(std::string_view text) {
  std::vector<std::pair<std::string, SourceSpan>> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t b = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > b) out.emplace_back(std::string(text.substr(b, i - b)), SourceSpan{b, i});
  }
  return out;
}

inline std::pair<int, TruthValue> parse_atom_binding(const std::string& token,
                                                     const SourceSpan& span, char prefix) {
  const std::size_t eq = token.find('=');
  if (token.size() < 4 || token[0] != prefix || eq == std::string::npos ||
      eq + 2 != token.size())
    throw ParseError(std::string("expected '") + prefix + "<N>=<value>'", span);
  int index = -1;
  try {
    index = std::stoi(token.substr(1, eq - 1));
  } catch (...) {
    throw ParseError("bad atom index", span);
  }
  const auto value = truth_value_from_char(token[eq + 1]);
  if (!value) throw ParseError("truth values are 1, 0, B or N", span);
  return {index, *value};
}

}  // namespace detail

/// `p0=1 p1=B p2=N p3=0`
inline Valuation parse_valuation(std::string_view text, Flavor flavor,
                                 TruthValue fill = TruthValue::Zero) {
  std::map<int, TruthValue> values;
  for (const auto& [token, span] : detail::split_ws(text)) {
    const auto [atom, value] = detail::parse_atom_binding(token, span, 'p');
    values[atom] = value;
  }
  return Valuation(flavor, std::move(values), fill);
}

inline std::string render_valuation(const Valuation& v) {
  std::string out;
  for (const auto& [atom, value] : v.explicit_values()) {
    if (!out.empty()) out += ' ';
    out += 'p' + std::to_string(atom) + '=' + to_char(value);
  }
  return out;
}

/// `v0=1 v1=B`
inline Assignment parse_assignment(std::string_view text, TruthValue fill) {
  std::map<int, TruthValue> values;
  for (const auto& [token, span] : detail::split_ws(text)) {
    const auto [var, value] = detail::parse_atom_binding(token, span, 'v');
    values[var] = value;
  }
  return Assignment(fill, std::move(values));
}

inline std::string render_assignment(const Assignment& gamma) {
  std::string out;
  for (const auto& [var, value] : gamma.explicit_values()) {
    if (!out.empty()) out += ' ';
    out += 'v' + std::to_string(var) + '=' + to_char(value);
  }
  return out;
}

/// `flavor=b4 theory{p0=B p1=N} consts{$c=B $d=1} default=N`
inline ExtensionalModel parse_model_desc(std::string_view text) {
  std::optional<ModelKind> kind;
  std::map<int, TruthValue> theory;
  std::map<std::string, TruthValue> consts;
  std::optional<TruthValue> fill;

  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  while (skip_ws(), i < text.size()) {
    std::size_t b = i;
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i]))))
      ++i;
    const std::string field(text.substr(b, i - b));
    if (i >= text.size() || (text[i] != '=' && text[i] != '{'))
      throw ParseError("expected '=' or '{' after field name", {b, i});
    if (text[i] == '=') {
      ++i;
      std::size_t vb = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      const std::string value(text.substr(vb, i - vb));
      if (field == "flavor") {
        kind = parse_model_kind(value);
        if (!kind) throw ParseError("unknown flavor '" + value + "'", {vb, i});
      } else if (field == "default") {
        if (value.size() != 1 || !truth_value_from_char(value[0]))
          throw ParseError("truth values are 1, 0, B or N", {vb, i});
        fill = truth_value_from_char(value[0]);
      } else {
        throw ParseError("unknown field '" + field + "'", {b, i});
      }
    } else {
      ++i;
      const std::size_t close = text.find('}', i);
      if (close == std::string_view::npos) throw ParseError("unterminated '{'", {b, i});
      const std::string_view body = text.substr(i, close - i);
      if (field == "theory") {
        for (const auto& [token, span] : detail::split_ws(body)) {
          const auto [atom, value] = detail::parse_atom_binding(
              token, SourceSpan{i + span.begin, i + span.end}, 'p');
          theory[atom] = value;
        }
      } else if (field == "consts") {
        for (const auto& [token, span] : detail::split_ws(body)) {
          const std::size_t eq = token.find('=');
          if (token.size() < 4 || token[0] != '$' || eq == std::string::npos ||
              eq + 2 != token.size())
            throw ParseError("expected '$<name>=<value>'",
                             {i + span.begin, i + span.end});
          const auto value = truth_value_from_char(token[eq + 1]);
          if (!value)
            throw ParseError("truth values are 1, 0, B or N",
                             {i + span.begin, i + span.end});
          consts[token.substr(1, eq - 1)] = *value;
        }
      } else {
        throw ParseError("unknown field '" + field + "'", {b, i});
      }
      i = close + 1;
    }
  }
  if (!kind) throw ParseError("model description needs a flavor", {0, text.size()});
  if (!fill) {
    switch (*kind) {
      case ModelKind::UnitEmpty: fill = TruthValue::Neither; break;
      case ModelKind::UnitFull: fill = TruthValue::Both; break;
      default: fill = TruthValue::Zero; break;
    }
  }
  Flavor theory_flavor = Flavor::B4;
  switch (*kind) {
    case ModelKind::Classical: theory_flavor = Flavor::Classical; break;
    case ModelKind::K3: theory_flavor = Flavor::K3; break;
    case ModelKind::P3: theory_flavor = Flavor::P3; break;
    default: break;  // unit models carry a B4-tagged theory
  }
  return build_model(*kind, Valuation(theory_flavor, std::move(theory), *fill),
                     std::move(consts));
}

/// `[v0 := <formula>; $c := <formula>; {p0} := <formula>]`
inline Substitution parse_substitution(std::string_view text) {
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i >= text.size() || text[i] != '[')
    throw ParseError("substitutions are written '[atom := formula; ...]'", {i, i + 1});
  ++i;
  Substitution sigma;
  skip_ws();
  if (i < text.size() && text[i] == ']') return sigma;
  for (;;) {
    // The binding runs to the next top-level ';' or ']'.
    int depth = 0;
    const std::size_t begin = i;
    std::size_t end = std::string_view::npos;
    for (; i < text.size(); ++i) {
      const char c = text[i];
      if (c == '{' || c == '(' || c == '[') ++depth;
      else if (c == '}' || c == ')') --depth;
      else if (c == ']' && depth > 0) --depth;
      else if (depth == 0 && (c == ';' || c == ']')) {
        end = i;
        break;
      }
    }
    if (end == std::string_view::npos)
      throw ParseError("unterminated substitution", {begin, text.size()});
    const std::string_view binding = text.substr(begin, end - begin);
    const std::size_t arrow = binding.find(":=");
    if (arrow == std::string_view::npos)
      throw ParseError("expected ':=' in binding", {begin, end});
    Formula atom = [&] {
      try {
        return parse_formula(binding.substr(0, arrow));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), {begin + e.span().begin, begin + e.span().end},
                         e.expected());
      }
    }();
    Formula image = [&] {
      try {
        return parse_formula(binding.substr(arrow + 2));
      } catch (const ParseError& e) {
        throw ParseError(e.what(),
                         {begin + arrow + 2 + e.span().begin, begin + arrow + 2 + e.span().end},
                         e.expected());
      }
    }();
    switch (atom.kind()) {
      case Formula::Kind::Var:
        sigma = sigma.updated(SubstAtom(atom.var_index()), std::move(image));
        break;
      case Formula::Kind::Const:
        sigma = sigma.updated(SubstAtom(atom.const_name()), std::move(image));
        break;
      case Formula::Kind::Param:
        sigma = sigma.updated(SubstAtom(atom.prop()), std::move(image));
        break;
      default:
        throw ParseError(
            "the left side of a binding must be a variable, constant or parameter "
            "expression",
            {begin, begin + arrow});
    }
    if (text[end] == ']') break;
    i = end + 1;
  }
  return sigma;
}

}  // namespace etl
