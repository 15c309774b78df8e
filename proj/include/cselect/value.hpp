#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cselect/term.hpp"

namespace cselect {

// Element of the checker's domain (a small non-negative integer). Lengths
// and indices computed by model operations use the same representation.
struct Elem {
  int value;
  friend auto operator<=>(const Elem&, const Elem&) = default;
};

// The abstract list model: a flat ordered list of elements.
using ModelList = std::vector<int>;

struct Null {
  friend bool operator==(const Null&, const Null&) { return true; }
};

class Value;
struct PairCell;
struct Function;
struct EvalContext;

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Value {
 public:
  using Rep = std::variant<Null, bool, Elem, ModelList, std::shared_ptr<const PairCell>,
                           std::shared_ptr<const Function>>;

  Value() : rep_(Null{}) {}
  Value(Null n) : rep_(n) {}
  Value(bool b) : rep_(b) {}
  Value(Elem e) : rep_(e) {}
  Value(ModelList l) : rep_(std::move(l)) {}
  Value(std::shared_ptr<const Function> f) : rep_(std::move(f)) {}
  static Value pair(Value a, Value b);
  static Value elem(int v) { return Value(Elem{v}); }
  static Value opt_elem(const std::optional<int>& v) { return v ? elem(*v) : Value(Null{}); }

  bool is_null() const { return std::holds_alternative<Null>(rep_); }
  bool is_bool() const { return std::holds_alternative<bool>(rep_); }
  bool is_elem() const { return std::holds_alternative<Elem>(rep_); }
  bool is_list() const { return std::holds_alternative<ModelList>(rep_); }
  bool is_pair() const { return std::holds_alternative<std::shared_ptr<const PairCell>>(rep_); }
  bool is_function() const {
    return std::holds_alternative<std::shared_ptr<const Function>>(rep_);
  }

  bool as_bool() const {
    if (auto* b = std::get_if<bool>(&rep_)) return *b;
    throw EvalError("expected a boolean, got " + to_string());
  }
  int as_elem() const {
    if (auto* e = std::get_if<Elem>(&rep_)) return e->value;
    throw EvalError("expected an element, got " + to_string());
  }
  const ModelList& as_list() const {
    if (auto* l = std::get_if<ModelList>(&rep_)) return *l;
    throw EvalError("expected a list, got " + to_string());
  }
  const Value& first() const;
  const Value& second() const;
  const std::shared_ptr<const Function>& as_function() const {
    if (auto* f = std::get_if<std::shared_ptr<const Function>>(&rep_)) return *f;
    throw EvalError("expected a function, got " + to_string());
  }

  const Rep& rep() const { return rep_; }

  std::string to_string() const;

 private:
  Rep rep_;
};

struct PairCell {
  Value first;
  Value second;
};

// Built-in or adapter function of fixed arity.
struct NativeFn {
  std::string name;
  int arity;
  std::function<Value(std::span<const Value>, EvalContext&)> call;
};

struct EnvNode;
using EnvPtr = std::shared_ptr<const EnvNode>;
struct EnvNode {
  std::string name;
  Value value;
  EnvPtr next;
};

inline EnvPtr extend(EnvPtr env, std::string name, Value v) {
  return std::make_shared<const EnvNode>(EnvNode{std::move(name), std::move(v), std::move(env)});
}

inline const Value* lookup(const EnvPtr& env, const std::string& name) {
  for (const EnvNode* n = env.get(); n; n = n->next.get()) {
    if (n->name == name) return &n->value;
  }
  return nullptr;
}

// A function value: either a lambda closure or a partially applied native.
struct Function {
  struct Closure {
    std::string param;
    TermPtr body;
    EnvPtr env;
  };
  struct Partial {
    std::shared_ptr<const NativeFn> fn;
    std::vector<Value> args;
  };
  std::variant<Closure, Partial> rep;
};

inline Value Value::pair(Value a, Value b) {
  Value v;
  v.rep_ = std::make_shared<const PairCell>(PairCell{std::move(a), std::move(b)});
  return v;
}

inline const Value& Value::first() const {
  if (auto* p = std::get_if<std::shared_ptr<const PairCell>>(&rep_)) return (*p)->first;
  throw EvalError("expected a pair, got " + to_string());
}
inline const Value& Value::second() const {
  if (auto* p = std::get_if<std::shared_ptr<const PairCell>>(&rep_)) return (*p)->second;
  throw EvalError("expected a pair, got " + to_string());
}

inline std::string to_string(const ModelList& l) {
  std::string out = "[";
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(l[i]);
  }
  return out + "]";
}

inline std::string Value::to_string() const {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Null>) {
          return "null";
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, Elem>) {
          return std::to_string(x.value);
        } else if constexpr (std::is_same_v<T, ModelList>) {
          return cselect::to_string(x);
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const PairCell>>) {
          return "(" + x->first.to_string() + ", " + x->second.to_string() + ")";
        } else {
          return "<function>";
        }
      },
      rep_);
}

// Structural equality. Comparing functions is an evaluation error.
inline bool operator==(const Value& a, const Value& b) {
  if (a.rep().index() != b.rep().index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.rep());
        if constexpr (std::is_same_v<T, std::shared_ptr<const PairCell>>) {
          return x->first == y->first && x->second == y->second;
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Function>>) {
          throw EvalError("functions cannot be compared");
        } else {
          return x == y;
        }
      },
      a.rep());
}

}  // namespace cselect
