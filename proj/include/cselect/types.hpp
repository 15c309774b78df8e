#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace cselect {

struct SpecType;
using TypePtr = std::shared_ptr<const SpecType>;

// Bool | type variable | Con<elem> | from -> to. Quantification only occurs
// in TypeScheme, i.e. at the outermost level of built-in and property types.
struct SpecType {
  enum class Kind { Bool, Var, Con, Arrow };
  Kind kind;
  int var = -1;
  TypePtr a;  // Con element, or Arrow domain
  TypePtr b;  // Arrow codomain
};

namespace ty {
inline TypePtr boolean() {
  static const TypePtr t = std::make_shared<const SpecType>(SpecType{SpecType::Kind::Bool});
  return t;
}
inline TypePtr var(int id) {
  return std::make_shared<const SpecType>(SpecType{SpecType::Kind::Var, id});
}
inline TypePtr con(TypePtr elem) {
  return std::make_shared<const SpecType>(SpecType{SpecType::Kind::Con, -1, std::move(elem)});
}
inline TypePtr arrow(TypePtr from, TypePtr to) {
  return std::make_shared<const SpecType>(
      SpecType{SpecType::Kind::Arrow, -1, std::move(from), std::move(to)});
}
// arrow({a, b, c}) == a -> b -> c
inline TypePtr arrows(std::initializer_list<TypePtr> parts) {
  std::vector<TypePtr> v(parts);
  TypePtr t = v.back();
  for (auto it = v.rbegin() + 1; it != v.rend(); ++it) t = arrow(*it, t);
  return t;
}
}  // namespace ty

// A type quantified over `vars` (local ids 0..n-1). Variables listed in
// `simple` may only be instantiated to Bool, element or container types.
struct TypeScheme {
  int vars = 0;
  std::vector<int> simple;
  std::vector<std::vector<std::string>> bounds;  // per variable, may be empty
  TypePtr body;
};

struct UnifyError : std::runtime_error {
  TypePtr expected, actual;
  UnifyError(std::string msg, TypePtr e, TypePtr a)
      : std::runtime_error(std::move(msg)), expected(std::move(e)), actual(std::move(a)) {}
};

// Union-find style substitution over integer type variables.
class Substitution {
 public:
  TypePtr fresh(bool simple = false) {
    binding_.push_back(nullptr);
    simple_.push_back(simple);
    return ty::var(static_cast<int>(binding_.size()) - 1);
  }

  TypePtr resolve(const TypePtr& t) const {
    TypePtr cur = t;
    while (cur->kind == SpecType::Kind::Var && binding_[cur->var]) cur = binding_[cur->var];
    return cur;
  }

  // Fully applies the substitution.
  TypePtr zonk(const TypePtr& t) const {
    TypePtr r = resolve(t);
    switch (r->kind) {
      case SpecType::Kind::Con: return ty::con(zonk(r->a));
      case SpecType::Kind::Arrow: return ty::arrow(zonk(r->a), zonk(r->b));
      default: return r;
    }
  }

  void unify(const TypePtr& expected, const TypePtr& actual) {
    TypePtr a = resolve(expected), b = resolve(actual);
    if (a == b) return;
    using K = SpecType::Kind;
    if (a->kind == K::Var && b->kind == K::Var && a->var == b->var) return;
    if (a->kind == K::Var) return bind(a->var, b, expected, actual);
    if (b->kind == K::Var) return bind(b->var, a, expected, actual);
    if (a->kind != b->kind) throw UnifyError("type mismatch", zonk(expected), zonk(actual));
    if (a->kind == K::Bool) return;
    try {
      unify(a->a, b->a);
      if (a->kind == K::Arrow) unify(a->b, b->b);
    } catch (const UnifyError&) {
      throw UnifyError("type mismatch", zonk(expected), zonk(actual));
    }
  }

  TypePtr instantiate(const TypeScheme& s) {
    std::vector<TypePtr> fresh_vars;
    for (int i = 0; i < s.vars; ++i) {
      bool simple = false;
      for (int v : s.simple) simple = simple || v == i;
      fresh_vars.push_back(fresh(simple));
    }
    return substitute(s.body, fresh_vars);
  }

  bool is_simple(int v) const { return simple_[v]; }

 private:
  static TypePtr substitute(const TypePtr& t, const std::vector<TypePtr>& vars) {
    switch (t->kind) {
      case SpecType::Kind::Var: return vars.at(t->var);
      case SpecType::Kind::Con: return ty::con(substitute(t->a, vars));
      case SpecType::Kind::Arrow: return ty::arrow(substitute(t->a, vars), substitute(t->b, vars));
      default: return t;
    }
  }

  bool occurs(int v, const TypePtr& t) const {
    TypePtr r = resolve(t);
    switch (r->kind) {
      case SpecType::Kind::Var: return r->var == v;
      case SpecType::Kind::Con: return occurs(v, r->a);
      case SpecType::Kind::Arrow: return occurs(v, r->a) || occurs(v, r->b);
      default: return false;
    }
  }

  // Marks every variable inside `t` as simple; fails on arrows.
  void make_simple(const TypePtr& t, const TypePtr& expected, const TypePtr& actual) {
    TypePtr r = resolve(t);
    switch (r->kind) {
      case SpecType::Kind::Var: simple_[r->var] = true; break;
      case SpecType::Kind::Con: make_simple(r->a, expected, actual); break;
      case SpecType::Kind::Arrow:
        throw UnifyError("function type where a simple type is required", zonk(expected),
                         zonk(actual));
      default: break;
    }
  }

  void bind(int v, const TypePtr& t, const TypePtr& expected, const TypePtr& actual) {
    if (occurs(v, t)) throw UnifyError("infinite type", zonk(expected), zonk(actual));
    if (simple_[v]) make_simple(t, expected, actual);
    binding_[v] = t;
  }

  std::vector<TypePtr> binding_;
  std::vector<bool> simple_;
};

// Renders a type, naming variables τ, τ1, τ2... in order of appearance.
inline std::string to_string(const TypePtr& t, std::map<int, std::string>& names) {
  switch (t->kind) {
    case SpecType::Kind::Bool: return "Bool";
    case SpecType::Kind::Var: {
      auto it = names.find(t->var);
      if (it == names.end()) {
        std::string n = names.empty() ? "τ" : "τ" + std::to_string(names.size());
        it = names.emplace(t->var, n).first;
      }
      return it->second;
    }
    case SpecType::Kind::Con: return "Con<" + to_string(t->a, names) + ">";
    case SpecType::Kind::Arrow: {
      std::string lhs = to_string(t->a, names);
      if (t->a->kind == SpecType::Kind::Arrow) lhs = "(" + lhs + ")";
      return lhs + " -> " + to_string(t->b, names);
    }
  }
  return "?";
}

inline std::string to_string(const TypePtr& t) {
  std::map<int, std::string> names;
  return to_string(t, names);
}

}  // namespace cselect
