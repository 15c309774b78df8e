#include <gtest/gtest.h>

#include "common.hpp"
#include "cselect/builtins.hpp"
#include "cselect/eval.hpp"
#include "oracle.hpp"

using namespace cselect;

namespace {

struct Dsl {
  EvalContext cx{standard_builtins(), 4};

  Value eval(const std::string& text) { return cx.eval(parse_term(text)); }
  Value call(const std::string& fn, std::initializer_list<Value> args) { return cx.call(eval(fn), args); }
};

const char* kUnique = R"(\c -> for-all-elems c (\a -> unique-count? a c))";
const char* kAscending = R"(\c -> for-all-consecutive-pairs c (\a b -> leq? a b))";
const char* kDescending = R"(\c -> for-all-consecutive-pairs c (\a b -> geq? a b))";

Value L(ModelList xs) { return Value(std::move(xs)); }
Value E(int x) { return Value::elem(x); }
Value P(Value a, Value b) { return Value::pair(std::move(a), std::move(b)); }

std::optional<int> output_of(const Value& v) {
  if (v.is_null()) return std::nullopt;
  if (v.is_bool()) return v.as_bool() ? 1 : 0;
  return v.as_elem();
}

}  // namespace

TEST(Eval, PredicateExamples) {
  Dsl d;
  EXPECT_FALSE(d.call(kUnique, {L({3, 1, 2, 3})}).as_bool());
  EXPECT_TRUE(d.call(kUnique, {L({3, 1, 2})}).as_bool());
  EXPECT_TRUE(d.call(R"(\c -> for-all-elems c (\a -> false))", {L({})}).as_bool());
  EXPECT_TRUE(d.call(kAscending, {L({1, 1, 2})}).as_bool());
  EXPECT_FALSE(d.call(kAscending, {L({2, 1})}).as_bool());
  EXPECT_FALSE(d.call(kDescending, {L({1, 2})}).as_bool());
  EXPECT_TRUE(d.call(kDescending, {L({})}).as_bool());
}

TEST(Eval, ForallRangesOverDomain) {
  Dsl d;
  const char* below = R"(\n -> forall \x. leq? x n)";
  EXPECT_TRUE(d.call(below, {E(3)}).as_bool());
  EXPECT_FALSE(d.call(below, {E(2)}).as_bool());
  EvalContext wide(standard_builtins(), 6);
  EXPECT_FALSE(wide.call(wide.eval(parse_term(below)), {E(3)}).as_bool());
}

TEST(Eval, BooleanConnectives) {
  Dsl d;
  EXPECT_TRUE(d.eval("true and (not false)").as_bool());
  EXPECT_FALSE(d.eval("false or false").as_bool());
  EXPECT_TRUE(d.call(R"(\x -> (list x) == (cons x nil))", {E(1)}).as_bool());
}

TEST(Eval, NullDistinctFromEmptyList) {
  Dsl d;
  EXPECT_FALSE(d.eval("null == nil").as_bool());
  EXPECT_TRUE(d.eval("null == null").as_bool());
  EXPECT_FALSE(Value() == Value(ModelList{}));
  EXPECT_FALSE(Value() == E(0));
}

TEST(Eval, Deterministic) {
  Dsl d;
  const char* t = R"(\xs -> forall \x. unique-count? x (append xs (list x)))";
  Value a = d.call(t, {L({1, 2})});
  Value b = d.call(t, {L({1, 2})});
  EXPECT_TRUE(a == b);
}

TEST(Eval, FuelBoundsEvaluation) {
  Dsl d;
  d.cx.set_fuel_limit(10);
  EXPECT_THROW(d.eval(R"(forall \x. forall \y. forall \z. leq? x y)"), EvalError);
}

TEST(ModelOps, InsertSeq) {
  Dsl d;
  EXPECT_TRUE(d.call("model-insert-seq", {L({1, 2}), E(3)}) == L({1, 2, 3}));
  EXPECT_TRUE(d.call("model-insert-seq", {L({}), E(5)}) == L({5}));
  EXPECT_TRUE(d.call("model-insert-seq", {L({2, 2}), E(2)}) == L({2, 2, 2}));
}

TEST(ModelOps, InsertSortedUnique) {
  Dsl d;
  EXPECT_TRUE(d.call("model-insert-sorted-unique", {L({1, 3}), E(2)}) == L({1, 2, 3}));
  EXPECT_TRUE(d.call("model-insert-sorted-unique", {L({1, 2, 3}), E(2)}) == L({1, 2, 3}));
  EXPECT_TRUE(d.call("model-insert-sorted-unique", {L({}), E(0)}) == L({0}));
}

TEST(ModelOps, Contains) {
  Dsl d;
  EXPECT_TRUE(d.call("model-contains", {L({1, 2}), E(2)}) == P(L({1, 2}), true));
  EXPECT_TRUE(d.call("model-contains", {L({}), E(7)}) == P(L({}), false));
  EXPECT_TRUE(d.call("model-contains", {L({3, 3}), E(1)}) == P(L({3, 3}), false));
}

TEST(ModelOps, Remove) {
  Dsl d;
  EXPECT_TRUE(d.call("model-remove", {L({1, 2, 1}), E(1)}) == P(L({2, 1}), E(1)));
  EXPECT_TRUE(d.call("model-remove", {L({}), E(4)}) == P(L({}), Value()));
  EXPECT_TRUE(d.call("model-remove", {L({5}), E(5)}) == P(L({}), E(5)));
}

TEST(ModelOps, First) {
  Dsl d;
  EXPECT_TRUE(d.call("model-first", {L({1, 2, 3})}) == P(L({1, 2, 3}), E(1)));
  EXPECT_TRUE(d.call("model-first", {L({})}) == P(L({}), Value()));
  EXPECT_TRUE(d.call("model-first", {L({9})}) == P(L({9}), E(9)));
}

TEST(ModelOps, PushPop) {
  Dsl d;
  EXPECT_TRUE(d.call("model-pop", {d.call("model-push-lifo", {L({1, 2}), E(3)})}) == P(L({1, 2}), E(3)));
  EXPECT_TRUE(d.call("model-pop", {d.call("model-push-fifo", {L({1, 2}), E(3)})}) == P(L({3, 1}), E(2)));
  EXPECT_TRUE(d.call("model-pop", {L({})}) == P(L({}), Value()));
}

TEST(ModelOps, CatalogueDefinitionsMatchNatives) {
  // The catalogue writes its model operations in the term language; on the
  // same inputs they agree with the native ones.
  const auto& cat = testutil::catalogue();
  const std::vector<std::pair<std::string, std::string>> pairs{
      {"Vec", "model-insert-seq"}, {"BTreeSet", "model-insert-sorted-unique"},
      {"SortedVec", "model-insert-sorted"}, {"UniqueVec", "model-insert-unique"}};
  for (const auto& [name, native] : pairs) {
    SCOPED_TRACE(name);
    ContainerModel m(*cat.find(name), 5);
    Value fn = m.context().eval(var(native));
    for (const auto& xs : oracle::all_lists(3, 4)) {
      if (!m.invariant(xs)) continue;
      for (int x = 0; x < 5; ++x) {
        Value expect = m.context().call(fn, {L(xs), E(x)});
        EXPECT_TRUE(m.apply_raw(*cat.find(name)->triple("insert"), xs, x) == expect);
      }
    }
  }
}

TEST(ModelOps, Pure) {
  Dsl d;
  ModelList xs{3, 1, 2};
  Value in = L(xs);
  d.call("model-remove", {in, E(1)});
  d.call("model-insert-seq", {in, E(9)});
  d.call("model-pop", {in});
  EXPECT_EQ(in.as_list(), xs);
}

TEST(ModelOps, LifoLaw) {
  Dsl d;
  for (const auto& xs : oracle::all_lists(3, 4)) {
    for (int x = 0; x < 4; ++x) {
      Value popped = d.call("model-pop", {d.call("model-push-lifo", {L(xs), E(x)})});
      EXPECT_TRUE(popped == P(L(xs), E(x)));
    }
  }
}

// Every model operation of every shipped specification agrees with the
// hand-written reference on all admissible lists of length <= 4 over {0..4}.
TEST(ModelOps, AgreeWithReference) {
  const auto& cat = testutil::catalogue();
  const auto ref = oracle::catalogue();
  ASSERT_EQ(cat.containers.size(), ref.size());
  const int m = 5;
  const auto lists = oracle::all_lists(4, m);
  for (const auto& spec : cat.containers) {
    SCOPED_TRACE(spec.name);
    const oracle::Spec* o = oracle::find(ref, spec.name);
    ASSERT_NE(o, nullptr);
    EXPECT_EQ(std::set<std::string>(spec.interfaces.begin(), spec.interfaces.end()), o->interfaces);
    ContainerModel model(spec, m);
    for (const auto& xs : lists) {
      ASSERT_EQ(model.invariant(xs), o->invariant(xs)) << to_string(xs);
    }
    ASSERT_EQ(spec.triples.size(), o->ops.size());
    for (const auto& t : spec.triples) {
      SCOPED_TRACE(t.op);
      const oracle::Op* op = o->op(t.op);
      ASSERT_NE(op, nullptr);
      ASSERT_EQ(t.shape.has_aux(), op->takes_arg);
      for (const auto& xs : lists) {
        if (!o->invariant(xs)) continue;
        for (int a = 0; a < (op->takes_arg ? m : 1); ++a) {
          ASSERT_TRUE(model.pre(t, xs, a));
          ModelStep got = model.apply(t, xs, a);
          oracle::Step want = op->run(xs, a);
          ASSERT_EQ(got.post, want.post) << to_string(xs) << " arg " << a;
          ASSERT_EQ(t.shape.paired(), want.has_out);
          if (want.has_out) {
            ASSERT_EQ(output_of(got.output), want.out) << to_string(xs) << " arg " << a;
          }
        }
      }
    }
  }
}
