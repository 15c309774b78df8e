#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace cselect {

struct SourcePos {
  int line = 0;
  int column = 0;
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct BoolLit {
  bool value;
};
struct Var {
  std::string name;
};
struct Lambda {
  std::string param;
  TermPtr body;
};
struct App {
  TermPtr fn;
  TermPtr arg;
};

// Terms of the property language: literals, variables, lambdas and
// application. Trees are immutable and may be shared.
struct Term {
  std::variant<BoolLit, Var, Lambda, App> node;
  SourcePos pos;

  const Var* as_var() const { return std::get_if<Var>(&node); }
  const Lambda* as_lambda() const { return std::get_if<Lambda>(&node); }
  const App* as_app() const { return std::get_if<App>(&node); }
  const BoolLit* as_bool() const { return std::get_if<BoolLit>(&node); }
};

inline TermPtr bool_lit(bool v, SourcePos pos = {}) {
  return std::make_shared<const Term>(Term{BoolLit{v}, pos});
}
inline TermPtr var(std::string name, SourcePos pos = {}) {
  return std::make_shared<const Term>(Term{Var{std::move(name)}, pos});
}
inline TermPtr lambda(std::string param, TermPtr body, SourcePos pos = {}) {
  return std::make_shared<const Term>(Term{Lambda{std::move(param), std::move(body)}, pos});
}
inline TermPtr app(TermPtr fn, TermPtr arg, SourcePos pos = {}) {
  if (pos.line == 0) pos = fn->pos;
  return std::make_shared<const Term>(Term{App{std::move(fn), std::move(arg)}, pos});
}
inline TermPtr app(TermPtr fn, std::initializer_list<TermPtr> args) {
  for (const auto& a : args) fn = app(fn, a);
  return fn;
}

// Structural equality; source positions are ignored.
inline bool equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using N = std::decay_t<decltype(x)>;
        const auto& y = std::get<N>(b->node);
        if constexpr (std::is_same_v<N, BoolLit>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<N, Var>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<N, Lambda>) {
          return x.param == y.param && equal(x.body, y.body);
        } else {
          return equal(x.fn, y.fn) && equal(x.arg, y.arg);
        }
      },
      a->node);
}

// Splits an application spine `f a b c` into head `f` and args [a, b, c].
inline std::pair<TermPtr, std::vector<TermPtr>> spine(TermPtr t) {
  std::vector<TermPtr> args;
  while (const App* a = t->as_app()) {
    args.push_back(a->arg);
    t = a->fn;
  }
  return {t, std::vector<TermPtr>(args.rbegin(), args.rend())};
}

namespace detail {
inline bool is_infix_word(const std::string& s) { return s == "and" || s == "or"; }

inline void print_term(const TermPtr& t, std::string& out, bool arg_position) {
  if (const auto* b = t->as_bool()) {
    out += b->value ? "true" : "false";
  } else if (const auto* v = t->as_var()) {
    // `and`/`or` after the head of an application read as infix operators.
    if (arg_position && is_infix_word(v->name)) {
      out += "(" + v->name + ")";
    } else {
      out += v->name;
    }
  } else if (const auto* l = t->as_lambda()) {
    out += "(\\" + l->param + " -> ";
    print_term(l->body, out, false);
    out += ")";
  } else {
    auto [head, args] = spine(t);
    out += "(";
    print_term(head, out, false);
    for (const auto& a : args) {
      out += " ";
      print_term(a, out, true);
    }
    out += ")";
  }
}
}  // namespace detail

// Prints a term in canonical fully parenthesised form. The output re-parses
// to a structurally equal term.
inline std::string print(const TermPtr& t) {
  std::string out;
  detail::print_term(t, out, false);
  return out;
}

// Names occurring free in `t`, with the position of their first occurrence.
inline void free_vars(const TermPtr& t, std::vector<std::pair<std::string, SourcePos>>& out,
                      std::vector<std::string>& bound) {
  if (const auto* v = t->as_var()) {
    for (const auto& b : bound) {
      if (b == v->name) return;
    }
    for (const auto& [n, _] : out) {
      if (n == v->name) return;
    }
    out.emplace_back(v->name, t->pos);
  } else if (const auto* l = t->as_lambda()) {
    bound.push_back(l->param);
    free_vars(l->body, out, bound);
    bound.pop_back();
  } else if (const auto* a = t->as_app()) {
    free_vars(a->fn, out, bound);
    free_vars(a->arg, out, bound);
  }
}

inline std::vector<std::pair<std::string, SourcePos>> free_vars(const TermPtr& t) {
  std::vector<std::pair<std::string, SourcePos>> out;
  std::vector<std::string> bound;
  free_vars(t, out, bound);
  return out;
}

}  // namespace cselect
