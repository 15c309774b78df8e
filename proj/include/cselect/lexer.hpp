#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cselect/term.hpp"

namespace cselect {

enum class Tok {
  Ident,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LAngle,
  RAngle,
  Backslash,
  Arrow,    // ->
  Dot,
  Subtype,  // <:
  Pipe,
  Comma,
  EqEq,     // ==
  Equals,   // =
  Colon,
  Semicolon,
  Question,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

struct LexError : std::runtime_error {
  SourcePos pos;
  LexError(const std::string& msg, SourcePos p) : std::runtime_error(msg), pos(p) {}
};

inline const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LAngle: return "'<'";
    case Tok::RAngle: return "'>'";
    case Tok::Backslash: return "'\\'";
    case Tok::Arrow: return "'->'";
    case Tok::Dot: return "'.'";
    case Tok::Subtype: return "'<:'";
    case Tok::Pipe: return "'|'";
    case Tok::Comma: return "','";
    case Tok::EqEq: return "'=='";
    case Tok::Equals: return "'='";
    case Tok::Colon: return "':'";
    case Tok::Semicolon: return "';'";
    case Tok::Question: return "'?'";
    case Tok::End: return "end of input";
  }
  return "?";
}

namespace detail {
inline bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '?' ||
         c == '!' || c == '*' || c == '\'';
}
}  // namespace detail

// Tokenises the shared surface syntax of `.prs` property files and `.cts`
// catalogue files. `#` starts a comment running to end of line.
inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    SourcePos pos{line, col};
    if (detail::ident_start(c)) {
      std::size_t j = i + 1;
      while (j < src.size() && detail::ident_char(src[j])) {
        // `x->` lexes as `x` followed by an arrow.
        if (src[j] == '-' && j + 1 < src.size() && src[j + 1] == '>') break;
        ++j;
      }
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), pos});
      advance(j - i);
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == "->") {
      out.push_back({Tok::Arrow, "->", pos});
      advance(2);
      continue;
    }
    if (two == "<:") {
      out.push_back({Tok::Subtype, "<:", pos});
      advance(2);
      continue;
    }
    if (two == "==") {
      out.push_back({Tok::EqEq, "==", pos});
      advance(2);
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case '<': k = Tok::LAngle; break;
      case '>': k = Tok::RAngle; break;
      case '\\': k = Tok::Backslash; break;
      case '.': k = Tok::Dot; break;
      case '|': k = Tok::Pipe; break;
      case ',': k = Tok::Comma; break;
      case '=': k = Tok::Equals; break;
      case ':': k = Tok::Colon; break;
      case ';': k = Tok::Semicolon; break;
      case '?': k = Tok::Question; break;
      default:
        throw LexError(std::string("unexpected character '") + c + "'", pos);
    }
    out.push_back({k, std::string(1, c), pos});
    advance(1);
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

struct ParseError {
  std::string message;
  SourcePos pos;
};

inline std::string format(const ParseError& e) {
  return std::to_string(e.pos.line) + ":" + std::to_string(e.pos.column) + ": " + e.message;
}

struct ParseFailure : std::runtime_error {
  ParseError error;
  explicit ParseFailure(ParseError e) : std::runtime_error(e.message), error(std::move(e)) {}
};

// Cursor over a token vector plus the term grammar shared by both file
// formats:
//
//   term   := '\' ident+ ('->' | '.') term | infix
//   infix  := eq (('and' | 'or') eq)*
//   eq     := apps ('==' apps)?
//   apps   := atom atom* [lambda]
//   atom   := ident | '(' term ')'
//
// `a == b` desugars to `equal? a b`; infix `and`/`or` to prefix application.
// Identifiers in `stop_words` end a term (used for catalogue clause keywords).
class TokenCursor {
 public:
  TokenCursor(std::vector<Token> toks, std::vector<std::string> stop_words = {})
      : toks_(std::move(toks)), stop_(std::move(stop_words)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const { return at(Tok::Ident) && peek().text == w; }
  bool at_end() const { return at(Tok::End); }
  std::size_t position() const { return pos_; }
  void seek(std::size_t p) { pos_ = p; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseFailure({msg, peek().pos}); }

  const Token& expect(Tok k) {
    if (!at(k)) {
      fail(std::string("expected ") + describe(k) + ", found " +
           (at(Tok::Ident) ? "'" + peek().text + "'" : describe(peek().kind)));
    }
    return next();
  }
  void expect_word(std::string_view w) {
    if (!at_word(w)) fail("expected '" + std::string(w) + "'");
    next();
  }
  std::string expect_ident() { return expect(Tok::Ident).text; }

  bool is_stop_word() const {
    if (!at(Tok::Ident)) return false;
    for (const auto& s : stop_) {
      if (peek().text == s) return true;
    }
    return false;
  }

  TermPtr parse_term() {
    if (at(Tok::Backslash)) return parse_lambda();
    return parse_infix();
  }

  // `\x y -> body`; also accepts `\x. body`.
  TermPtr parse_lambda() {
    SourcePos pos = expect(Tok::Backslash).pos;
    std::vector<std::string> params;
    params.push_back(expect_ident());
    while (at(Tok::Ident)) params.push_back(next().text);
    if (at(Tok::Arrow) || at(Tok::Dot)) {
      next();
    } else {
      fail("expected '->' or '.' after lambda parameters");
    }
    TermPtr body = parse_term();
    for (auto it = params.rbegin(); it != params.rend(); ++it) body = lambda(*it, body, pos);
    return body;
  }

 private:
  bool at_atom_start() const {
    if (at(Tok::LParen)) return true;
    return at(Tok::Ident) && !is_stop_word();
  }

  TermPtr parse_infix() {
    TermPtr lhs = parse_eq();
    while (at(Tok::Ident) && (peek().text == "and" || peek().text == "or")) {
      const Token& op = next();
      TermPtr rhs = parse_eq();
      lhs = app(app(var(op.text, op.pos), lhs), rhs);
    }
    return lhs;
  }

  TermPtr parse_eq() {
    TermPtr lhs = parse_apps();
    if (at(Tok::EqEq)) {
      SourcePos pos = next().pos;
      TermPtr rhs = parse_apps();
      return app(app(var("equal?", pos), lhs), rhs);
    }
    return lhs;
  }

  TermPtr parse_apps() {
    if (!at_atom_start()) {
      fail(std::string("expected a term, found ") +
           (at(Tok::Ident) ? "'" + peek().text + "'" : describe(peek().kind)));
    }
    TermPtr head = parse_atom();
    for (;;) {
      if (at(Tok::Backslash)) return app(head, parse_lambda());
      if (at(Tok::Ident) && (peek().text == "and" || peek().text == "or")) break;
      if (!at_atom_start()) break;
      head = app(head, parse_atom());
    }
    return head;
  }

  TermPtr parse_atom() {
    if (at(Tok::LParen)) {
      next();
      TermPtr t = parse_term();
      expect(Tok::RParen);
      return t;
    }
    const Token& t = expect(Tok::Ident);
    if (t.text == "true") return bool_lit(true, t.pos);
    if (t.text == "false") return bool_lit(false, t.pos);
    return var(t.text, t.pos);
  }

  std::vector<Token> toks_;
  std::vector<std::string> stop_;
  std::size_t pos_ = 0;
};

// Parses a single standalone term.
inline TermPtr parse_term(std::string_view text) {
  TokenCursor cur(tokenize(text));
  TermPtr t = cur.parse_term();
  if (!cur.at_end()) cur.fail("unexpected trailing input");
  return t;
}

}  // namespace cselect
