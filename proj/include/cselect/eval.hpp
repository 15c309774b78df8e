#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cselect/term.hpp"
#include "cselect/types.hpp"
#include "cselect/value.hpp"

namespace cselect {

struct Builtin {
  std::shared_ptr<const NativeFn> fn;
  // Absent for model-level primitives that cannot be typed in the property
  // language (pairs, lengths, indices).
  std::optional<TypeScheme> type;
};

class BuiltinRegistry {
 public:
  void add(std::string name, int arity, std::optional<TypeScheme> type,
           std::function<Value(std::span<const Value>, EvalContext&)> call) {
    auto fn = std::make_shared<const NativeFn>(NativeFn{name, arity, std::move(call)});
    entries_[std::move(name)] = Builtin{std::move(fn), std::move(type)};
  }

  const Builtin* find(const std::string& name) const {
    auto it = entries_.find(name);
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [n, _] : entries_) out.push_back(n);
    return out;
  }

 private:
  std::map<std::string, Builtin> entries_;
};

inline constexpr long kDefaultFuel = 5'000'000;

// Evaluation state for one family of evaluations. Variables resolve, in
// order, against the local environment, `@`-prefixed interface operation
// bindings, named definitions and finally built-ins.
//
// Not thread-safe: definition values are cached on first use.
struct EvalContext {
  EvalContext(const BuiltinRegistry& builtins, int domain_size)
      : builtins_(&builtins), domain_size_(domain_size) {}

  void set_definitions(std::map<std::string, TermPtr> defs) {
    definitions_ = std::move(defs);
    cache_.clear();
  }
  void set_ops(std::map<std::string, Value> ops) { ops_ = std::move(ops); }
  const std::map<std::string, TermPtr>& definitions() const { return definitions_; }

  int domain_size() const { return domain_size_; }
  void set_fuel_limit(long fuel) { fuel_limit_ = fuel; }
  // Steps consumed by the most recent top-level evaluation.
  long steps_used() const { return fuel_limit_ - fuel_; }

  Value eval(const TermPtr& t, const EnvPtr& env = nullptr) {
    fuel_ = fuel_limit_;
    return eval_rec(t, env);
  }

  Value call(const Value& f, std::span<const Value> args) {
    fuel_ = fuel_limit_;
    Value cur = f;
    for (const auto& a : args) cur = apply(cur, a);
    return cur;
  }
  Value call(const Value& f, std::initializer_list<Value> args) {
    return call(f, std::span<const Value>(args.begin(), args.size()));
  }

  // Application inside an ongoing evaluation (used by higher-order natives).
  Value apply(const Value& f, const Value& arg) {
    const auto& fn = f.as_function();
    if (const auto* c = std::get_if<Function::Closure>(&fn->rep)) {
      return eval_rec(c->body, extend(c->env, c->param, arg));
    }
    const auto& p = std::get<Function::Partial>(fn->rep);
    std::vector<Value> args = p.args;
    args.push_back(arg);
    if (static_cast<int>(args.size()) == p.fn->arity) return p.fn->call(args, *this);
    return Value(std::make_shared<const Function>(Function{Function::Partial{p.fn, std::move(args)}}));
  }

 private:
  Value eval_rec(const TermPtr& t, const EnvPtr& env) {
    if (--fuel_ < 0) throw EvalError("evaluation fuel exhausted");
    if (const auto* b = t->as_bool()) return Value(b->value);
    if (const auto* v = t->as_var()) return resolve(v->name, env);
    if (const auto* l = t->as_lambda()) {
      return Value(std::make_shared<const Function>(Function{Function::Closure{l->param, l->body, env}}));
    }
    const auto& a = std::get<App>(t->node);
    Value fn = eval_rec(a.fn, env);
    Value arg = eval_rec(a.arg, env);
    return apply(fn, arg);
  }

  Value resolve(const std::string& name, const EnvPtr& env) {
    if (const Value* v = lookup(env, name)) return *v;
    if (!name.empty() && name[0] == '@') {
      auto it = ops_.find(name.substr(1));
      if (it == ops_.end()) throw EvalError("no model operation bound for '" + name.substr(1) + "'");
      return it->second;
    }
    if (auto it = definitions_.find(name); it != definitions_.end()) {
      if (auto c = cache_.find(name); c != cache_.end()) return c->second;
      if (!in_progress_.insert(name).second) throw EvalError("recursive definition '" + name + "'");
      Value v = eval_rec(it->second, nullptr);
      in_progress_.erase(name);
      cache_.emplace(name, v);
      return v;
    }
    if (const Builtin* b = builtins_->find(name)) {
      if (b->fn->arity == 0) return b->fn->call({}, *this);
      return Value(std::make_shared<const Function>(Function{Function::Partial{b->fn, {}}}));
    }
    throw EvalError("unbound variable '" + name + "'");
  }

  const BuiltinRegistry* builtins_;
  int domain_size_;
  std::map<std::string, TermPtr> definitions_;
  std::map<std::string, Value> ops_;
  std::map<std::string, Value> cache_;
  std::set<std::string> in_progress_;
  long fuel_limit_ = kDefaultFuel;
  long fuel_ = kDefaultFuel;
};

// Wraps a C++ callable as an evaluator function value of the given arity.
inline Value native_value(std::string name, int arity,
                          std::function<Value(std::span<const Value>, EvalContext&)> call) {
  auto fn = std::make_shared<const NativeFn>(NativeFn{std::move(name), arity, std::move(call)});
  return Value(std::make_shared<const Function>(Function{Function::Partial{std::move(fn), {}}}));
}

}  // namespace cselect
