#pragma once

#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cselect/lexer.hpp"
#include "cselect/term.hpp"

namespace cselect {

// `property name { body }`. When the body starts with `\c <: B -> ...` the
// bound interfaces are recorded in `bounds` and `body` keeps the lambda.
struct PropertyDef {
  std::string name;
  std::vector<std::string> bounds;
  TermPtr body;
  SourcePos pos;
};

// `type Name<T> = {c <: (B1, B2) | refinement}`.
struct ContainerTypeDecl {
  std::string name;
  std::string elem_param;
  std::string var;
  std::vector<std::string> bounds;
  TermPtr refinement;
  SourcePos pos;
};

using Declaration = std::variant<PropertyDef, ContainerTypeDecl>;

struct SpecFile {
  std::vector<Declaration> decls;

  std::vector<const PropertyDef*> properties() const {
    std::vector<const PropertyDef*> out;
    for (const auto& d : decls) {
      if (auto* p = std::get_if<PropertyDef>(&d)) out.push_back(p);
    }
    return out;
  }
  std::vector<const ContainerTypeDecl*> types() const {
    std::vector<const ContainerTypeDecl*> out;
    for (const auto& d : decls) {
      if (auto* t = std::get_if<ContainerTypeDecl>(&d)) out.push_back(t);
    }
    return out;
  }
};

inline bool operator==(const PropertyDef& a, const PropertyDef& b) {
  return a.name == b.name && a.bounds == b.bounds && equal(a.body, b.body);
}
inline bool operator==(const ContainerTypeDecl& a, const ContainerTypeDecl& b) {
  return a.name == b.name && a.elem_param == b.elem_param && a.var == b.var &&
         a.bounds == b.bounds && equal(a.refinement, b.refinement);
}
inline bool operator==(const SpecFile& a, const SpecFile& b) { return a.decls == b.decls; }

struct SpecParseResult {
  SpecFile spec;
  std::vector<ParseError> errors;
  bool ok() const { return errors.empty(); }
};

namespace detail {

inline std::vector<std::string> parse_bounds(TokenCursor& cur) {
  std::vector<std::string> out;
  if (cur.at(Tok::LParen)) {
    cur.next();
    if (!cur.at(Tok::RParen)) {
      out.push_back(cur.expect_ident());
      while (cur.at(Tok::Comma)) {
        cur.next();
        out.push_back(cur.expect_ident());
      }
    }
    cur.expect(Tok::RParen);
  } else {
    out.push_back(cur.expect_ident());
  }
  return out;
}

inline PropertyDef parse_property(TokenCursor& cur) {
  PropertyDef p;
  p.pos = cur.peek().pos;
  cur.expect_word("property");
  p.name = cur.expect_ident();
  cur.expect(Tok::LBrace);
  // Bounded parameter: `\c <: StackT -> body`.
  if (cur.at(Tok::Backslash) && cur.peek(1).kind == Tok::Ident &&
      cur.peek(2).kind == Tok::Subtype) {
    SourcePos lpos = cur.next().pos;
    std::string param = cur.expect_ident();
    cur.expect(Tok::Subtype);
    p.bounds = parse_bounds(cur);
    if (cur.at(Tok::Arrow) || cur.at(Tok::Dot)) {
      cur.next();
    } else {
      cur.fail("expected '->' after bounded parameter");
    }
    p.body = lambda(param, cur.parse_term(), lpos);
  } else {
    p.body = cur.parse_term();
  }
  cur.expect(Tok::RBrace);
  return p;
}

inline ContainerTypeDecl parse_type_decl(TokenCursor& cur) {
  ContainerTypeDecl d;
  d.pos = cur.peek().pos;
  cur.expect_word("type");
  d.name = cur.expect_ident();
  cur.expect(Tok::LAngle);
  d.elem_param = cur.expect_ident();
  cur.expect(Tok::RAngle);
  cur.expect(Tok::Equals);
  cur.expect(Tok::LBrace);
  d.var = cur.expect_ident();
  cur.expect(Tok::Subtype);
  d.bounds = parse_bounds(cur);
  cur.expect(Tok::Pipe);
  d.refinement = cur.parse_term();
  cur.expect(Tok::RBrace);
  return d;
}

}  // namespace detail

// Parses a `.prs` property specification. Errors are collected per
// declaration; after an error the parser resynchronises at the next
// `property` or `type` keyword.
inline SpecParseResult parse_spec(std::string_view text) {
  SpecParseResult result;
  std::vector<Token> toks;
  try {
    toks = tokenize(text);
  } catch (const LexError& e) {
    result.errors.push_back({e.what(), e.pos});
    return result;
  }
  TokenCursor cur(std::move(toks));
  std::set<std::string> names;
  auto resync = [&] {
    cur.next();
    while (!cur.at_end() && !cur.at_word("property") && !cur.at_word("type")) cur.next();
  };
  while (!cur.at_end()) {
    try {
      if (cur.at_word("property")) {
        PropertyDef p = detail::parse_property(cur);
        if (!names.insert(p.name).second) {
          result.errors.push_back({"duplicate declaration '" + p.name + "'", p.pos});
        } else {
          result.spec.decls.emplace_back(std::move(p));
        }
      } else if (cur.at_word("type")) {
        ContainerTypeDecl d = detail::parse_type_decl(cur);
        if (!names.insert(d.name).second) {
          result.errors.push_back({"duplicate declaration '" + d.name + "'", d.pos});
        } else {
          result.spec.decls.emplace_back(std::move(d));
        }
      } else {
        cur.fail("expected 'property' or 'type'");
      }
      if (cur.at(Tok::Semicolon)) cur.next();
    } catch (const ParseFailure& f) {
      result.errors.push_back(f.error);
      resync();
    }
  }
  return result;
}

namespace detail {
inline std::string print_bounds(const std::vector<std::string>& bounds) {
  std::string out = "(";
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (i) out += ", ";
    out += bounds[i];
  }
  return out + ")";
}
}  // namespace detail

inline std::string print(const PropertyDef& p) {
  std::string out = "property " + p.name + " { ";
  if (!p.bounds.empty()) {
    const Lambda* l = p.body->as_lambda();
    out += "\\" + l->param + " <: " + detail::print_bounds(p.bounds) + " -> " + print(l->body);
  } else {
    out += print(p.body);
  }
  return out + " }";
}

inline std::string print(const ContainerTypeDecl& d) {
  return "type " + d.name + "<" + d.elem_param + "> = {" + d.var + " <: " +
         detail::print_bounds(d.bounds) + " | " + print(d.refinement) + "}";
}

inline std::string print(const SpecFile& spec) {
  std::string out;
  for (const auto& d : spec.decls) {
    std::visit([&](const auto& x) { out += print(x); }, d);
    out += "\n";
  }
  return out;
}

// Flattens nested `and` applications of a refinement into its conjuncts,
// left to right.
inline std::vector<TermPtr> refinement_conjuncts(const TermPtr& refinement) {
  std::vector<TermPtr> out;
  auto walk = [&](auto&& self, const TermPtr& t) -> void {
    auto [head, args] = spine(t);
    if (const Var* v = head->as_var(); v && v->name == "and" && args.size() == 2) {
      self(self, args[0]);
      self(self, args[1]);
    } else {
      out.push_back(t);
    }
  };
  walk(walk, refinement);
  return out;
}

inline std::vector<TermPtr> refinement_conjuncts(const ContainerTypeDecl& decl) {
  return refinement_conjuncts(decl.refinement);
}

}  // namespace cselect
