#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cselect/builtins.hpp"
#include "cselect/interface.hpp"
#include "cselect/spec_lang.hpp"
#include "cselect/types.hpp"

namespace cselect {

enum class TypeErrorKind {
  UnboundVariable,
  TypeMismatch,
  UnknownInterface,
  PropertyBodyNotPredicate,
  OperationOutsideBound,
  DuplicateBound,
};

inline const char* to_string(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::UnboundVariable: return "UnboundVariable";
    case TypeErrorKind::TypeMismatch: return "TypeMismatch";
    case TypeErrorKind::UnknownInterface: return "UnknownInterface";
    case TypeErrorKind::PropertyBodyNotPredicate: return "PropertyBodyNotPredicate";
    case TypeErrorKind::OperationOutsideBound: return "OperationOutsideBound";
    case TypeErrorKind::DuplicateBound: return "DuplicateBound";
  }
  return "?";
}

struct TypeError {
  TypeErrorKind kind;
  std::string declaration;
  std::string message;
  SourcePos pos;
  std::string expected;  // set for TypeMismatch
  std::string actual;
};

inline std::string format(const TypeError& e) {
  std::string out = std::to_string(e.pos.line) + ":" + std::to_string(e.pos.column) + ": " +
                    to_string(e.kind) + " in '" + e.declaration + "': " + e.message;
  if (!e.expected.empty()) out += " (expected " + e.expected + ", actual " + e.actual + ")";
  return out;
}

// A property after inference. `body` is the resolved term: interface
// operations are renamed to `@op` and `for-all-elems` arguments are in
// declared order.
struct TypedProperty {
  std::string name;
  std::vector<std::string> bounds;
  // Own bounds plus those of every property referenced from the body.
  std::vector<std::string> required_interfaces;
  TermPtr body;
  TypeScheme type;
  std::string type_text;
};

struct TypedConjunct {
  TermPtr source;
  TermPtr resolved;
  std::string text;
  std::vector<std::string> required_interfaces;
};

struct TypedContainerType {
  ContainerTypeDecl decl;
  std::vector<TypedConjunct> conjuncts;
};

struct TypedSpec {
  std::vector<TypedProperty> properties;
  std::vector<TypedContainerType> types;

  const TypedProperty* find_property(const std::string& name) const {
    for (const auto& p : properties) {
      if (p.name == name) return &p;
    }
    return nullptr;
  }
  const TypedContainerType* find_type(const std::string& name) const {
    for (const auto& t : types) {
      if (t.decl.name == name) return &t;
    }
    return nullptr;
  }
  std::map<std::string, TermPtr> definitions() const {
    std::map<std::string, TermPtr> out;
    for (const auto& p : properties) out[p.name] = p.body;
    return out;
  }
};

struct TypecheckResult {
  TypedSpec spec;
  std::vector<TypeError> errors;
  bool ok() const { return errors.empty(); }
};

// Property-level type of an interface operation, if it has one. Sizes and
// indices have no representation in the property language.
inline std::optional<TypeScheme> operation_type(const OpShape& shape) {
  using namespace ty;
  const auto a = ty::var(0);
  if (shape.input == OpInput::Index || shape.output == OpOutput::Size) return std::nullopt;
  std::vector<TypePtr> parts{con(a)};
  if (shape.input == OpInput::Elem) parts.push_back(a);
  switch (shape.output) {
    case OpOutput::Unit: parts.push_back(con(a)); break;
    case OpOutput::Bool: parts.push_back(boolean()); break;
    case OpOutput::OptElem: parts.push_back(a); break;
    case OpOutput::Size: break;
  }
  TypePtr t = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) t = arrow(*it, t);
  return TypeScheme{1, {0}, {}, t};
}

namespace detail {

struct TypeFailure {
  TypeError error;
};

class Inferencer {
 public:
  Inferencer(const InterfaceRegistry& ifaces, const BuiltinRegistry& builtins,
             const std::map<std::string, const TypedProperty*>& props, std::string decl,
             std::vector<const InterfaceSig*> bound)
      : ifaces_(ifaces), builtins_(builtins), props_(props), decl_(std::move(decl)),
        bound_(std::move(bound)) {}

  Substitution subst;
  std::set<std::string> required;
  std::vector<std::pair<TypePtr, SourcePos>> quantified;

  void push(std::string name, TypePtr t) { scope_.emplace_back(std::move(name), std::move(t)); }
  void pop() { scope_.pop_back(); }

  std::pair<TypePtr, TermPtr> infer(const TermPtr& t) {
    if (t->as_bool()) return {ty::boolean(), t};
    if (const auto* v = t->as_var()) return infer_var(*v, t);
    if (const auto* l = t->as_lambda()) {
      TypePtr p = subst.fresh();
      push(l->param, p);
      auto [bt, body] = infer(l->body);
      pop();
      return {ty::arrow(p, bt), lambda(l->param, body, t->pos)};
    }
    auto [head, args] = spine(t);
    std::vector<std::pair<TypePtr, TermPtr>> typed_args;
    if (const Var* hv = head->as_var(); hv && args.size() >= 2 && hv->name == "for-all-elems" &&
                                        !is_local(hv->name) && !props_.count(hv->name)) {
      for (const auto& a : args) typed_args.push_back(infer(a));
      if (subst.resolve(typed_args[0].first)->kind == SpecType::Kind::Arrow) {
        std::swap(typed_args[0], typed_args[1]);
      }
    }
    auto [ft, fterm] = infer(head);
    for (std::size_t i = 0; i < args.size(); ++i) {
      auto [at, aterm] = i < typed_args.size() ? typed_args[i] : infer(args[i]);
      TypePtr result = subst.fresh();
      try {
        subst.unify(ft, ty::arrow(at, result));
      } catch (const UnifyError& e) {
        fail(TypeErrorKind::TypeMismatch, args[i]->pos,
             "cannot apply " + print(fterm) + " to argument " + print(aterm),
             to_string(subst.zonk(ft)), "argument of type " + to_string(subst.zonk(at)));
      }
      fterm = app(fterm, aterm, t->pos);
      ft = result;
    }
    return {ft, fterm};
  }

  [[noreturn]] void fail(TypeErrorKind kind, SourcePos pos, std::string msg,
                         std::string expected = {}, std::string actual = {}) {
    throw TypeFailure{{kind, decl_, std::move(msg), pos, std::move(expected), std::move(actual)}};
  }

 private:
  bool is_local(const std::string& name) const {
    return std::any_of(scope_.begin(), scope_.end(), [&](const auto& e) { return e.first == name; });
  }

  std::pair<TypePtr, TermPtr> infer_var(const Var& v, const TermPtr& t) {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == v.name) return {it->second, t};
    }
    for (const InterfaceSig* sig : bound_) {
      if (const OperationSig* op = sig->find(v.name)) {
        auto scheme = operation_type(op->shape);
        if (!scheme) {
          fail(TypeErrorKind::TypeMismatch, t->pos,
               "operation '" + v.name + "' (" + to_string(op->shape) +
                   ") has no property-level type");
        }
        return {subst.instantiate(*scheme), var("@" + v.name, t->pos)};
      }
    }
    if (auto it = props_.find(v.name); it != props_.end()) {
      for (const auto& r : it->second->required_interfaces) required.insert(r);
      return {subst.instantiate(it->second->type), t};
    }
    if (const Builtin* b = builtins_.find(v.name)) {
      if (!b->type) {
        fail(TypeErrorKind::UnboundVariable, t->pos,
             "'" + v.name + "' is a model-level primitive and cannot be used in properties");
      }
      TypePtr inst = subst.instantiate(*b->type);
      if (v.name == "forall") quantified.emplace_back(subst.resolve(inst)->a->a, t->pos);
      return {inst, t};
    }
    if (auto owners = ifaces_.owners_of(v.name); !owners.empty()) {
      fail(TypeErrorKind::OperationOutsideBound, t->pos,
           "operation '" + v.name + "' of " + owners.front() +
               " used without declaring the interface bound");
    }
    fail(TypeErrorKind::UnboundVariable, t->pos, "unbound variable '" + v.name + "'");
  }

  const InterfaceRegistry& ifaces_;
  const BuiltinRegistry& builtins_;
  const std::map<std::string, const TypedProperty*>& props_;
  std::string decl_;
  std::vector<const InterfaceSig*> bound_;
  std::vector<std::pair<std::string, TypePtr>> scope_;
};

inline std::vector<const InterfaceSig*> resolve_bounds(const std::vector<std::string>& bounds,
                                                       const InterfaceRegistry& ifaces,
                                                       const std::string& decl, SourcePos pos) {
  std::vector<const InterfaceSig*> out;
  std::set<std::string> seen;
  for (const auto& b : bounds) {
    if (!seen.insert(b).second) {
      throw TypeFailure{{TypeErrorKind::DuplicateBound, decl, "interface '" + b + "' listed twice", pos}};
    }
    const InterfaceSig* sig = ifaces.find(b);
    if (!sig) {
      throw TypeFailure{{TypeErrorKind::UnknownInterface, decl, "unknown interface '" + b + "'", pos}};
    }
    out.push_back(sig);
  }
  return out;
}

inline TypedProperty check_property(const PropertyDef& p, const InterfaceRegistry& ifaces,
                                    const BuiltinRegistry& builtins,
                                    const std::map<std::string, const TypedProperty*>& props) {
  auto bound = resolve_bounds(p.bounds, ifaces, p.name, p.pos);
  Inferencer inf(ifaces, builtins, props, p.name, bound);
  auto [t, body] = inf.infer(p.body);

  TypePtr elem = inf.subst.fresh(true);
  TypePtr predicate = ty::arrow(ty::con(elem), ty::boolean());
  if (inf.subst.resolve(t)->kind != SpecType::Kind::Arrow) {
    inf.fail(TypeErrorKind::PropertyBodyNotPredicate, p.pos,
             "property body is not a predicate over containers", "Con<τ> -> Bool",
             to_string(inf.subst.zonk(t)));
  }
  try {
    inf.subst.unify(predicate, t);
  } catch (const UnifyError&) {
    inf.fail(TypeErrorKind::TypeMismatch, p.pos, "property body is not a predicate over containers",
             "Con<τ> -> Bool", to_string(inf.subst.zonk(t)));
  }
  if (inf.subst.resolve(elem)->kind != SpecType::Kind::Var) {
    inf.fail(TypeErrorKind::TypeMismatch, p.pos, "property constrains the element type",
             "Con<τ> -> Bool", to_string(inf.subst.zonk(predicate)));
  }
  for (const auto& [qt, pos] : inf.quantified) {
    TypePtr r = inf.subst.resolve(qt);
    if (r->kind != SpecType::Kind::Var) {
      inf.fail(TypeErrorKind::TypeMismatch, pos, "forall ranges over container elements only", "τ",
               to_string(inf.subst.zonk(qt)));
    }
  }

  TypedProperty out;
  out.name = p.name;
  out.bounds = p.bounds;
  std::set<std::string> req(p.bounds.begin(), p.bounds.end());
  req.insert(inf.required.begin(), inf.required.end());
  out.required_interfaces.assign(req.begin(), req.end());
  out.body = body;
  out.type = TypeScheme{1, {0}, {p.bounds}, ty::arrow(ty::con(ty::var(0)), ty::boolean())};
  out.type_text = to_string(inf.subst.zonk(predicate));
  return out;
}

inline TypedContainerType check_type_decl(const ContainerTypeDecl& d, const InterfaceRegistry& ifaces,
                                          const BuiltinRegistry& builtins,
                                          const std::map<std::string, const TypedProperty*>& props) {
  auto bound = resolve_bounds(d.bounds, ifaces, d.name, d.pos);
  TypedContainerType out{d, {}};
  for (const TermPtr& c : refinement_conjuncts(d)) {
    Inferencer inf(ifaces, builtins, props, d.name, bound);
    inf.push(d.var, ty::con(inf.subst.fresh(true)));
    auto [t, resolved] = inf.infer(c);
    try {
      inf.subst.unify(ty::boolean(), t);
    } catch (const UnifyError&) {
      inf.fail(TypeErrorKind::TypeMismatch, c->pos, "refinement conjunct is not a predicate",
               "Bool", to_string(inf.subst.zonk(t)));
    }
    for (const auto& r : inf.required) {
      if (std::find(d.bounds.begin(), d.bounds.end(), r) == d.bounds.end()) {
        inf.fail(TypeErrorKind::OperationOutsideBound, c->pos,
                 "conjunct " + print(c) + " requires interface '" + r +
                     "' which the type does not declare");
      }
    }
    out.conjuncts.push_back({c, resolved, print(c), {inf.required.begin(), inf.required.end()}});
  }
  return out;
}

}  // namespace detail

// Infers types for every declaration. Properties get principal type
// Con<τ> -> Bool; refinement conjuncts must be Bool with the refinement
// variable at Con<T>. Lambdas carry no annotations.
inline TypecheckResult typecheck(const SpecFile& spec, const InterfaceRegistry& ifaces,
                                 const BuiltinRegistry& builtins = standard_builtins()) {
  TypecheckResult result;
  result.spec.properties.reserve(spec.decls.size());
  std::map<std::string, const TypedProperty*> props;
  for (const auto& d : spec.decls) {
    try {
      if (const auto* p = std::get_if<PropertyDef>(&d)) {
        result.spec.properties.push_back(detail::check_property(*p, ifaces, builtins, props));
        props[p->name] = &result.spec.properties.back();
      } else {
        const auto& t = std::get<ContainerTypeDecl>(d);
        result.spec.types.push_back(detail::check_type_decl(t, ifaces, builtins, props));
      }
    } catch (const detail::TypeFailure& f) {
      result.errors.push_back(f.error);
    }
  }
  return result;
}

}  // namespace cselect
