#pragma once

#include <algorithm>

#include "cselect/eval.hpp"
#include "cselect/model_ops.hpp"

namespace cselect {

namespace detail {

inline Value pair_list(std::pair<ModelList, bool> r) { return Value::pair(std::move(r.first), r.second); }
inline Value pair_list(std::pair<ModelList, int> r) {
  return Value::pair(std::move(r.first), Value::elem(r.second));
}
inline Value pair_list(std::pair<ModelList, std::optional<int>> r) {
  return Value::pair(std::move(r.first), Value::opt_elem(r.second));
}

inline TypeScheme scheme(int vars, std::vector<int> simple, TypePtr body) {
  return TypeScheme{vars, std::move(simple), {}, std::move(body)};
}

inline void add_combinators(BuiltinRegistry& r) {
  using namespace ty;
  const auto a = var(0);

  // Accepts the predicate in either position; the declared order is
  // container first.
  r.add("for-all-elems", 2, scheme(1, {0}, arrows({con(a), arrow(a, boolean()), boolean()})),
        [](std::span<const Value> args, EvalContext& cx) -> Value {
          const Value* list = &args[0];
          const Value* fn = &args[1];
          if (list->is_function() && fn->is_list()) std::swap(list, fn);
          for (int x : list->as_list()) {
            if (!cx.apply(*fn, Value::elem(x)).as_bool()) return false;
          }
          return true;
        });
  r.add("for-all-consecutive-pairs", 2,
        scheme(1, {0}, arrows({con(a), arrows({a, a, boolean()}), boolean()})),
        [](std::span<const Value> args, EvalContext& cx) -> Value {
          const ModelList& xs = args[0].as_list();
          for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            Value partial = cx.apply(args[1], Value::elem(xs[i]));
            if (!cx.apply(partial, Value::elem(xs[i + 1])).as_bool()) return false;
          }
          return true;
        });
  // Universal quantification bounded to the element domain.
  r.add("forall", 1, scheme(1, {0}, arrows({arrow(a, boolean()), boolean()})),
        [](std::span<const Value> args, EvalContext& cx) -> Value {
          for (int d = 0; d < cx.domain_size(); ++d) {
            if (!cx.apply(args[0], Value::elem(d)).as_bool()) return false;
          }
          return true;
        });
  r.add("unique-count?", 2, scheme(1, {0}, arrows({a, con(a), boolean()})),
        [](std::span<const Value> args, EvalContext&) -> Value {
          if (!args[0].is_elem()) return false;
          int x = args[0].as_elem();
          const ModelList& xs = args[1].as_list();
          return std::count(xs.begin(), xs.end(), x) == 1;
        });
  auto compare = [](bool (*cmp)(int, int)) {
    return [cmp](std::span<const Value> args, EvalContext&) -> Value {
      if (!args[0].is_elem() || !args[1].is_elem()) return false;
      return cmp(args[0].as_elem(), args[1].as_elem());
    };
  };
  r.add("leq?", 2, scheme(1, {0}, arrows({a, a, boolean()})),
        compare([](int x, int y) { return x <= y; }));
  r.add("geq?", 2, scheme(1, {0}, arrows({a, a, boolean()})),
        compare([](int x, int y) { return x >= y; }));
  r.add("equal?", 2, scheme(1, {0}, arrows({a, a, boolean()})),
        [](std::span<const Value> args, EvalContext&) -> Value { return args[0] == args[1]; });
  r.add("and", 2, scheme(0, {}, arrows({boolean(), boolean(), boolean()})),
        [](std::span<const Value> args, EvalContext&) -> Value {
          return args[0].as_bool() && args[1].as_bool();
        });
  r.add("or", 2, scheme(0, {}, arrows({boolean(), boolean(), boolean()})),
        [](std::span<const Value> args, EvalContext&) -> Value {
          return args[0].as_bool() || args[1].as_bool();
        });
  r.add("not", 1, scheme(0, {}, arrow(boolean(), boolean())),
        [](std::span<const Value> args, EvalContext&) -> Value { return !args[0].as_bool(); });
  r.add("if", 3, scheme(1, {}, arrows({boolean(), a, a, a})),
        [](std::span<const Value> args, EvalContext&) -> Value {
          return args[0].as_bool() ? args[1] : args[2];
        });
}

inline void add_list_primitives(BuiltinRegistry& r) {
  using namespace ty;
  const auto a = var(0);
  auto list_of = [](const Value& v) -> const ModelList& { return v.as_list(); };

  r.add("append", 2, scheme(1, {0}, arrows({con(a), con(a), con(a)})),
        [=](std::span<const Value> args, EvalContext&) -> Value {
          ModelList out = list_of(args[0]);
          const ModelList& ys = list_of(args[1]);
          out.insert(out.end(), ys.begin(), ys.end());
          return out;
        });
  r.add("sort-ascending", 1, scheme(1, {0}, arrow(con(a), con(a))),
        [=](std::span<const Value> args, EvalContext&) -> Value {
          return model::sort_ascending(list_of(args[0]));
        });
  r.add("dedup-adjacent", 1, scheme(1, {0}, arrow(con(a), con(a))),
        [=](std::span<const Value> args, EvalContext&) -> Value {
          return model::dedup_adjacent(list_of(args[0]));
        });
  r.add("member?", 2, scheme(1, {0}, arrows({a, con(a), boolean()})),
        [=](std::span<const Value> args, EvalContext&) -> Value {
          return args[0].is_elem() && model::member(list_of(args[1]), args[0].as_elem());
        });
  r.add("remove-first", 2, scheme(1, {0}, arrows({a, con(a), con(a)})),
        [=](std::span<const Value> args, EvalContext&) -> Value {
          if (!args[0].is_elem()) return list_of(args[1]);
          return model::remove_first(list_of(args[1]), args[0].as_elem());
        });
  r.add("last", 1, scheme(1, {0}, arrow(con(a), a)),
        [=](std::span<const Value> args, EvalContext&) -> Value {
          return Value::opt_elem(model::last(list_of(args[0])).second);
        });
  r.add("head", 1, scheme(1, {0}, arrow(con(a), a)),
        [=](std::span<const Value> args, EvalContext&) -> Value {
          return Value::opt_elem(model::first(list_of(args[0])).second);
        });
  // True for null and for the empty list.
  r.add("null?", 1, scheme(1, {0}, arrow(a, boolean())),
        [](std::span<const Value> args, EvalContext&) -> Value {
          return args[0].is_null() || (args[0].is_list() && args[0].as_list().empty());
        });
  r.add("cons", 2, scheme(1, {0}, arrows({a, con(a), con(a)})),
        [=](std::span<const Value> args, EvalContext&) -> Value {
          ModelList out{args[0].as_elem()};
          const ModelList& xs = list_of(args[1]);
          out.insert(out.end(), xs.begin(), xs.end());
          return out;
        });
  r.add("list", 1, scheme(1, {0}, arrow(a, con(a))),
        [](std::span<const Value> args, EvalContext&) -> Value {
          return ModelList{args[0].as_elem()};
        });
  r.add("nil", 0, scheme(1, {0}, con(a)),
        [](std::span<const Value>, EvalContext&) -> Value { return ModelList{}; });
  r.add("null", 0, scheme(1, {0}, a),
        [](std::span<const Value>, EvalContext&) -> Value { return Null{}; });

  // Model-level only: pairs, lengths and indices have no property-language type.
  r.add("length", 1, std::nullopt, [=](std::span<const Value> args, EvalContext&) -> Value {
    return Value::elem(static_cast<int>(list_of(args[0]).size()));
  });
  r.add("take", 2, std::nullopt, [=](std::span<const Value> args, EvalContext&) -> Value {
    return model::take(list_of(args[0]), args[1].as_elem());
  });
  r.add("list-ref", 2, std::nullopt, [=](std::span<const Value> args, EvalContext&) -> Value {
    return Value::opt_elem(model::nth(list_of(args[0]), args[1].as_elem()).second);
  });
  r.add("sub1", 1, std::nullopt, [](std::span<const Value> args, EvalContext&) -> Value {
    return Value::elem(args[0].as_elem() - 1);
  });
  r.add("add1", 1, std::nullopt, [](std::span<const Value> args, EvalContext&) -> Value {
    return Value::elem(args[0].as_elem() + 1);
  });
  r.add("pair", 2, std::nullopt, [](std::span<const Value> args, EvalContext&) -> Value {
    return Value::pair(args[0], args[1]);
  });
  r.add("fst", 1, std::nullopt,
        [](std::span<const Value> args, EvalContext&) -> Value { return args[0].first(); });
  r.add("snd", 1, std::nullopt,
        [](std::span<const Value> args, EvalContext&) -> Value { return args[0].second(); });
}

inline void add_model_ops(BuiltinRegistry& r) {
  auto elem_op = [&](const char* name, ModelList (*f)(ModelList, int)) {
    r.add(name, 2, std::nullopt, [f](std::span<const Value> args, EvalContext&) -> Value {
      return f(args[0].as_list(), args[1].as_elem());
    });
  };
  elem_op("model-insert-seq", model::insert_seq);
  elem_op("model-insert-sorted-unique", model::insert_sorted_unique);
  elem_op("model-insert-sorted", model::insert_sorted);
  elem_op("model-insert-unique", model::insert_unique);
  elem_op("model-push-lifo", model::push_lifo);
  r.add("model-push-fifo", 2, std::nullopt, [](std::span<const Value> args, EvalContext&) -> Value {
    return model::push_fifo(args[0].as_list(), args[1].as_elem());
  });
  r.add("model-contains", 2, std::nullopt, [](std::span<const Value> args, EvalContext&) -> Value {
    return pair_list(model::contains(args[0].as_list(), args[1].as_elem()));
  });
  r.add("model-remove", 2, std::nullopt, [](std::span<const Value> args, EvalContext&) -> Value {
    return pair_list(model::remove(args[0].as_list(), args[1].as_elem()));
  });
  r.add("model-nth", 2, std::nullopt, [](std::span<const Value> args, EvalContext&) -> Value {
    return pair_list(model::nth(args[0].as_list(), args[1].as_elem()));
  });
  auto unary = [&](const char* name, auto f) {
    r.add(name, 1, std::nullopt, [f](std::span<const Value> args, EvalContext&) -> Value {
      return pair_list(f(args[0].as_list()));
    });
  };
  unary("model-first", &model::first);
  unary("model-last", &model::last);
  unary("model-pop", &model::pop);
  unary("model-len", &model::len);
  unary("model-is-empty", &model::is_empty);
  r.add("model-clear", 1, std::nullopt, [](std::span<const Value> args, EvalContext&) -> Value {
    return model::clear(args[0].as_list());
  });
}

}  // namespace detail

// The standard registry: property combinators and predicates, list
// primitives for writing model operations, and the native model operations.
inline const BuiltinRegistry& standard_builtins() {
  static const BuiltinRegistry reg = [] {
    BuiltinRegistry r;
    detail::add_combinators(r);
    detail::add_list_primitives(r);
    detail::add_model_ops(r);
    return r;
  }();
  return reg;
}

}  // namespace cselect
