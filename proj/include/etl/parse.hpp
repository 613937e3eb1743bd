#pragma once

#include <cctype>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "etl/formula.hpp"
#include "etl/prop_formula.hpp"

namespace etl {

/// Byte offsets [begin, end) into the input text.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, SourceSpan span, std::vector<std::string> expected = {})
      : std::runtime_error(format(message, span, expected)),
        span_(span),
        expected_(std::move(expected)) {}

  SourceSpan span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string format(const std::string& message, SourceSpan span,
                            const std::vector<std::string>& expected) {
    std::string out = "at " + std::to_string(span.begin) + ".." + std::to_string(span.end) +
                      ": " + message;
    if (!expected.empty()) {
      out += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) out += ", ";
        out += expected[i];
      }
      out += ')';
    }
    return out;
  }

  SourceSpan span_;
  std::vector<std::string> expected_;
};

namespace detail {

enum class Tok {
  End,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Dot,
  Var,        // v<N>
  PAtom,      // p<N>
  ConstName,  // $<ident>
  KwEx,
  KwAll,
  PostTrue,   // :true
  PostFalse,  // :false
  AndOp,      // /\ ,
  OrOp,       // \/
  ArrowOp,    // ->
  IdentOp,    // ==
  RefLt,      // <
  Tilde,      // ~
  Amp,        // &
  Pipe,       // |
  FatArrow,   // =>
};

inline const char* tok_name(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Dot: return "'.'";
    case Tok::Var: return "variable";
    case Tok::PAtom: return "atom";
    case Tok::ConstName: return "constant";
    case Tok::KwEx: return "'ex'";
    case Tok::KwAll: return "'all'";
    case Tok::PostTrue: return "':true'";
    case Tok::PostFalse: return "':false'";
    case Tok::AndOp: return "'/\\'";
    case Tok::OrOp: return "'\\/'";
    case Tok::ArrowOp: return "'->'";
    case Tok::IdentOp: return "'=='";
    case Tok::RefLt: return "'<'";
    case Tok::Tilde: return "'~'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::FatArrow: return "'=>'";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::End;
  SourceSpan span;
  int number = -1;   // Var / PAtom index
  std::string text;  // ConstName

  Token() = default;
  Token(Tok k, SourceSpan s) : kind(k), span(s) {}
};

class Lexer {
 public:
  explicit Lexer(std::string_view input) : in_(input) { next(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    next();
    return t;
  }

 private:
  [[noreturn]] void fail(std::size_t begin, const std::string& msg) const {
    throw ParseError(msg, {begin, std::min(pos_, in_.size())});
  }

  void next() {
    while (pos_ < in_.size() &&
           std::isspace(static_cast<unsigned char>(in_[pos_])))
      ++pos_;
    std::size_t b = pos_;
    tok_ = Token{Tok::End, {b, b}};
    if (pos_ >= in_.size()) return;
    char c = in_[pos_++];
    switch (c) {
      case '(': tok_ = {Tok::LParen, {b, pos_}}; return;
      case ')': tok_ = {Tok::RParen, {b, pos_}}; return;
      case '{': tok_ = {Tok::LBrace, {b, pos_}}; return;
      case '}': tok_ = {Tok::RBrace, {b, pos_}}; return;
      case '.': tok_ = {Tok::Dot, {b, pos_}}; return;
      case '~': tok_ = {Tok::Tilde, {b, pos_}}; return;
      case '&': tok_ = {Tok::Amp, {b, pos_}}; return;
      case '|': tok_ = {Tok::Pipe, {b, pos_}}; return;
      case '<': tok_ = {Tok::RefLt, {b, pos_}}; return;
      case '/':
        if (pos_ < in_.size() && in_[pos_] == '\\') {
          ++pos_;
          tok_ = {Tok::AndOp, {b, pos_}};
          return;
        }
        fail(b, "unknown token '/'");
      case '\\':
        if (pos_ < in_.size() && in_[pos_] == '/') {
          ++pos_;
          tok_ = {Tok::OrOp, {b, pos_}};
          return;
        }
        fail(b, "unknown token '\\'");
      case '-':
        if (pos_ < in_.size() && in_[pos_] == '>') {
          ++pos_;
          tok_ = {Tok::ArrowOp, {b, pos_}};
          return;
        }
        fail(b, "unknown token '-'");
      case '=':
        if (pos_ < in_.size() && in_[pos_] == '=') {
          ++pos_;
          tok_ = {Tok::IdentOp, {b, pos_}};
          return;
        }
        if (pos_ < in_.size() && in_[pos_] == '>') {
          ++pos_;
          tok_ = {Tok::FatArrow, {b, pos_}};
          return;
        }
        fail(b, "unknown token '='");
      case ':': {
        std::string word = read_word();
        if (word == "true") {
          tok_ = {Tok::PostTrue, {b, pos_}};
          return;
        }
        if (word == "false") {
          tok_ = {Tok::PostFalse, {b, pos_}};
          return;
        }
        fail(b, "unknown operator ':" + word + "'");
      }
      case '$': {
        std::string word = read_word();
        if (word.empty()) fail(b, "expected identifier after '$'");
        tok_ = {Tok::ConstName, {b, pos_}};
        tok_.text = std::move(word);
        return;
      }
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      --pos_;
      std::string word = read_word();
      if (word == "ex") {
        tok_ = {Tok::KwEx, {b, pos_}};
        return;
      }
      if (word == "all") {
        tok_ = {Tok::KwAll, {b, pos_}};
        return;
      }
      if (word.size() > 1 && (word[0] == 'v' || word[0] == 'p')) {
        bool digits = true;
        for (std::size_t i = 1; i < word.size(); ++i)
          digits = digits && std::isdigit(static_cast<unsigned char>(word[i]));
        if (digits) {
          tok_ = {word[0] == 'v' ? Tok::Var : Tok::PAtom, {b, pos_}};
          tok_.number = std::stoi(word.substr(1));
          return;
        }
      }
      fail(b, "unknown token '" + word + "'");
    }
    fail(b, std::string("unknown token '") + c + "'");
  }

  std::string read_word() {
    std::size_t b = pos_;
    while (pos_ < in_.size()) {
      char c = in_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
        ++pos_;
      else
        break;
    }
    return std::string(in_.substr(b, pos_ - b));
  }

  std::string_view in_;
  std::size_t pos_ = 0;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(std::string_view input) : lex_(input) {}

  Formula parse_formula_all() {
    Formula f = parse_expr();
    expect(Tok::End);
    return f;
  }

  PropFormula parse_prop_all() {
    PropFormula p = parse_prop();
    expect(Tok::End);
    return p;
  }

 private:
  [[noreturn]] void unexpected(std::vector<std::string> expected) {
    const Token& t = lex_.peek();
    throw ParseError(std::string("unexpected ") + tok_name(t.kind), t.span,
                     std::move(expected));
  }

  Token expect(Tok kind) {
    if (lex_.peek().kind != kind) unexpected({tok_name(kind)});
    return lex_.take();
  }

  bool accept(Tok kind) {
    if (lex_.peek().kind != kind) return false;
    lex_.take();
    return true;
  }

  // expr := quantifier | comparison
  Formula parse_expr() {
    const Tok k = lex_.peek().kind;
    if (k == Tok::KwEx || k == Tok::KwAll) {
      lex_.take();
      Token v = expect(Tok::Var);
      expect(Tok::Dot);
      Formula body = parse_expr();  // quantifier scope is maximal to the right
      return k == Tok::KwEx ? Formula::exists(v.number, std::move(body))
                            : Formula::forall(v.number, std::move(body));
    }
    return parse_cmp();
  }

  // comparison := arrow (('==' | '<') arrow)?   non-associative
  Formula parse_cmp() {
    Formula lhs = parse_arrow();
    const Tok k = lex_.peek().kind;
    if (k == Tok::IdentOp || k == Tok::RefLt) {
      lex_.take();
      Formula rhs = parse_arrow();
      Formula out = k == Tok::IdentOp ? Formula::ident(std::move(lhs), std::move(rhs))
                                      : Formula::ref(std::move(lhs), std::move(rhs));
      const Tok again = lex_.peek().kind;
      if (again == Tok::IdentOp || again == Tok::RefLt)
        throw ParseError("'==' and '<' are non-associative", lex_.peek().span,
                         {"'('"});
      return out;
    }
    return lhs;
  }

  // arrow := or ('->' arrow)?   right-associative, expanded on the spot
  Formula parse_arrow() {
    Formula lhs = parse_or();
    if (accept(Tok::ArrowOp)) {
      Formula rhs = parse_arrow();
      return Formula::arrow(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept(Tok::OrOp)) f = Formula::disj(std::move(f), parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_postfix();
    while (accept(Tok::AndOp)) f = Formula::conj(std::move(f), parse_postfix());
    return f;
  }

  Formula parse_postfix() {
    Formula f = parse_primary();
    for (;;) {
      if (accept(Tok::PostTrue))
        f = Formula::true_op(std::move(f));
      else if (accept(Tok::PostFalse))
        f = Formula::false_op(std::move(f));
      else
        return f;
    }
  }

  Formula parse_primary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Var: return Formula::var(lex_.take().number);
      case Tok::ConstName: return Formula::constant(lex_.take().text);
      case Tok::LBrace: {
        lex_.take();
        PropFormula p = parse_prop();
        expect(Tok::RBrace);
        return Formula::param(std::move(p));
      }
      case Tok::LParen: {
        lex_.take();
        Formula f = parse_expr();
        expect(Tok::RParen);
        return f;
      }
      default:
        unexpected({"variable", "constant", "'{'", "'('", "'ex'", "'all'"});
    }
  }

  // prop := por ('=>' prop)?   right-associative
  PropFormula parse_prop() {
    PropFormula lhs = parse_prop_or();
    if (accept(Tok::FatArrow)) return PropFormula::implies(std::move(lhs), parse_prop());
    return lhs;
  }

  PropFormula parse_prop_or() {
    PropFormula p = parse_prop_and();
    while (accept(Tok::Pipe)) p = PropFormula::disj(std::move(p), parse_prop_and());
    return p;
  }

  PropFormula parse_prop_and() {
    PropFormula p = parse_prop_atom();
    while (accept(Tok::Amp)) p = PropFormula::conj(std::move(p), parse_prop_atom());
    return p;
  }

  PropFormula parse_prop_atom() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::PAtom: return PropFormula::atom(lex_.take().number);
      case Tok::Tilde: {
        lex_.take();
        return PropFormula::negation(parse_prop_atom());
      }
      case Tok::LParen: {
        lex_.take();
        PropFormula p = parse_prop();
        expect(Tok::RParen);
        return p;
      }
      default: unexpected({"atom", "'~'", "'('"});
    }
  }

  Lexer lex_;
};

}  // namespace detail

/// Parse the concrete formula syntax. Throws ParseError on malformed input.
inline Formula parse_formula(std::string_view text) {
  return detail::Parser(text).parse_formula_all();
}

/// Parse a bare parameter-logic expression (without the surrounding braces).
inline PropFormula parse_prop(std::string_view text) {
  return detail::Parser(text).parse_prop_all();
}

}  // namespace etl
