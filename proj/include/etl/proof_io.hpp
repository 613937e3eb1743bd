#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "etl/calculus.hpp"
#include "etl/parse.hpp"
#include "etl/render.hpp"

namespace etl {

namespace detail {

// One step per line:
//   step <id> rule=<name> premises=[1,2] ctx={ f ; g } concl=<f> param.<k>=<v>
// '#' starts a comment; blank lines are skipped. Field scanning is brace
// aware because formulas contain '{...}' parameter expressions.
class ProofLineParser {
 public:
  ProofLineParser(std::string_view line, std::size_t base) : line_(line), base_(base) {}

  DerivationStep parse() {
    DerivationStep step;
    expect_word("step");
    step.id = parse_int();
    expect_word("rule");
    expect_char('=');
    step.rule_name = read_word();
    if (step.rule_name.empty()) fail("expected a rule name");
    step.rule = rule_from_string(step.rule_name);
    skip_ws();
    if (peek_word("premises")) {
      read_word();
      expect_char('=');
      expect_char('[');
      skip_ws();
      if (!try_char(']')) {
        for (;;) {
          step.premises.push_back(parse_int());
          skip_ws();
          if (try_char(']')) break;
          expect_char(',');
        }
      }
    }
    expect_word("ctx");
    expect_char('=');
    expect_char('{');
    std::vector<Formula> ctx;
    skip_ws();
    if (!try_char('}')) {
      for (;;) {
        const std::size_t begin = pos_;
        const std::size_t end = scan_until_delim(";}");
        ctx.push_back(parse_slice(begin, end));
        pos_ = end;
        if (try_char('}')) break;
        expect_char(';');
      }
    }
    expect_word("concl");
    expect_char('=');
    {
      const std::size_t begin = pos_;
      const std::size_t end = scan_until_param_field();
      step.sequent = make_sequent(std::move(ctx), parse_slice(begin, end));
      pos_ = end;
    }
    skip_ws();
    while (pos_ < line_.size()) {
      expect_word("param");
      expect_char('.');
      const std::string key = read_word();
      if (key.empty()) fail("expected a parameter key");
      if (step.params.count(key)) fail("duplicate parameter '" + key + "'");
      expect_char('=');
      const std::size_t begin = pos_;
      const std::size_t end = scan_until_param_field();
      step.params.emplace(key, parse_slice(begin, end));
      pos_ = end;
      skip_ws();
    }
    return step;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, {base_ + pos_, base_ + std::min(pos_ + 1, line_.size())});
  }

  void skip_ws() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_])))
      ++pos_;
  }

  std::string read_word() {
    skip_ws();
    std::size_t b = pos_;
    while (pos_ < line_.size() &&
           (std::isalnum(static_cast<unsigned char>(line_[pos_])) || line_[pos_] == '_'))
      ++pos_;
    return std::string(line_.substr(b, pos_ - b));
  }

  bool peek_word(std::string_view w) {
    skip_ws();
    return line_.substr(pos_, w.size()) == w;
  }

  void expect_word(std::string_view w) {
    const std::string got = read_word();
    if (got != w) fail("expected '" + std::string(w) + "'");
  }

  void expect_char(char c) {
    skip_ws();
    if (pos_ >= line_.size() || line_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool try_char(char c) {
    skip_ws();
    if (pos_ < line_.size() && line_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int parse_int() {
    skip_ws();
    std::size_t b = pos_;
    while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_])))
      ++pos_;
    if (b == pos_) fail("expected a number");
    return std::stoi(std::string(line_.substr(b, pos_ - b)));
  }

  // Position of the next top-level occurrence of one of `delims`.
  std::size_t scan_until_delim(std::string_view delims) {
    int depth = 0;
    for (std::size_t i = pos_; i < line_.size(); ++i) {
      const char c = line_[i];
      if (c == '{' || c == '(') ++depth;
      else if (c == '}' || c == ')') {
        if (depth == 0 && delims.find(c) != std::string_view::npos) return i;
        --depth;
      } else if (depth == 0 && delims.find(c) != std::string_view::npos) {
        return i;
      }
    }
    fail("unterminated field");
  }

  // End of a formula field: the next top-level " param." or end of line.
  std::size_t scan_until_param_field() {
    int depth = 0;
    for (std::size_t i = pos_; i < line_.size(); ++i) {
      const char c = line_[i];
      if (c == '{' || c == '(') ++depth;
      else if (c == '}' || c == ')') --depth;
      else if (depth == 0 && std::isspace(static_cast<unsigned char>(c)) &&
               line_.substr(i + 1, 6) == "param.")
        return i;
    }
    return line_.size();
  }

  Formula parse_slice(std::size_t begin, std::size_t end) {
    const std::string_view slice = line_.substr(begin, end - begin);
    try {
      return parse_formula(slice);
    } catch (const ParseError& e) {
      throw ParseError(e.what(),
                       {base_ + begin + e.span().begin, base_ + begin + e.span().end},
                       e.expected());
    }
  }

  std::string_view line_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a proof file. Malformed text throws ParseError; rule-level problems
/// are left to check_derivation.
inline Derivation parse_proof(std::string_view text) {
  Derivation d;
  std::size_t line_begin = 0;
  while (line_begin <= text.size()) {
    std::size_t line_end = text.find('\n', line_begin);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_begin, line_end - line_begin);
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    bool blank = true;
    for (char c : line) blank = blank && std::isspace(static_cast<unsigned char>(c));
    if (!blank) {
      DerivationStep step = detail::ProofLineParser(line, line_begin).parse();
      if (!d.steps.empty() && step.id <= d.steps.back().id)
        throw ParseError("step ids must be strictly increasing",
                         {line_begin, line_begin + line.size()});
      d.steps.push_back(std::move(step));
    }
    if (line_end == text.size()) break;
    line_begin = line_end + 1;
  }
  return d;
}

inline std::string render_proof(const Derivation& d) {
  std::string out;
  for (const DerivationStep& step : d.steps) {
    out += "step " + std::to_string(step.id);
    out += " rule=" + (step.rule == Rule::Unknown ? step.rule_name : to_string(step.rule));
    out += " premises=[";
    for (std::size_t i = 0; i < step.premises.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(step.premises[i]);
    }
    out += "] ctx={";
    for (std::size_t i = 0; i < step.sequent.context.size(); ++i) {
      out += i ? " ; " : " ";
      out += render_formula(step.sequent.context[i]);
    }
    out += step.sequent.context.empty() ? "}" : " }";
    out += " concl=" + render_formula(step.sequent.conclusion);
    for (const char* key : {"x", "z", "y", "template", "witness"}) {
      auto it = step.params.find(key);
      if (it != step.params.end())
        out += " param." + std::string(key) + "=" + render_formula(it->second);
    }
    for (const auto& [key, value] : step.params) {
      if (key != "x" && key != "z" && key != "y" && key != "template" && key != "witness")
        out += " param." + key + "=" + render_formula(value);
    }
    out += '\n';
  }
  return out;
}

}  // namespace etl
