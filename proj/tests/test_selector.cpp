#include <gtest/gtest.h>

#include "agreement.hpp"
#include "common.hpp"
#include "oracle.hpp"

using namespace cselect;

namespace {

const Catalogue& standard4() {
  static const Catalogue c = testutil::catalogue().subset({"Vec", "LinkedList", "HashSet", "BTreeSet"});
  return c;
}

std::vector<std::string> names(const std::vector<const ContainerSpec*>& specs) {
  std::vector<std::string> out;
  for (const auto* s : specs) out.push_back(s->name);
  return out;
}

struct Fixture {
  TypedSpec spec = testutil::typed(agreement::kProperties);
  CheckConfig cfg;

  Verdict on_op(const std::string& property, const std::string& container, const std::string& op) {
    const ContainerSpec& c = *testutil::catalogue().find(container);
    ContainerModel m(c, cfg.domain(), spec.definitions());
    m.set_fuel_limit(cfg.fuel);
    return check_property_on_op(m, m.context().eval(var(property)), property, *c.triple(op), cfg);
  }
  Verdict interaction(const std::string& property, const std::string& container) {
    const ContainerSpec& c = *testutil::catalogue().find(container);
    ContainerModel m(c, cfg.domain(), spec.definitions());
    return check_interaction_property(m, m.context().eval(var(property)), property, cfg);
  }
};

SelectionReport run(const std::string& sample, const Catalogue& cat, int k = 3, int threads = 1) {
  CheckConfig cfg;
  cfg.model_size = k;
  cfg.threads = threads;
  return select(testutil::typed_file(sample, cat), cat, cfg);
}

}  // namespace

TEST(Filter, IndexableExcludesHashSet) {
  auto out = filter_syntactic(std::vector<std::string>{"ContainerT", "IndexableT"}, standard4());
  EXPECT_EQ(names(out), (std::vector<std::string>{"BTreeSet", "LinkedList", "Vec"}));
}

TEST(Filter, NoBoundsKeepsEverything) {
  EXPECT_EQ(filter_syntactic(std::vector<std::string>{}, testutil::catalogue()).size(), 10u);
}

TEST(Filter, StackBound) {
  auto out = filter_syntactic(std::vector<std::string>{"ContainerT", "StackT"}, testutil::catalogue());
  EXPECT_EQ(names(out), (std::vector<std::string>{"Queue", "Stack"}));
}

TEST(Filter, UnknownInterface) {
  EXPECT_THROW(filter_syntactic(std::vector<std::string>{"MapT"}, testutil::catalogue()), std::invalid_argument);
}

TEST(CheckOp, AscendingBTreeSetInsert) {
  Fixture f;
  EXPECT_EQ(f.on_op("ascending", "BTreeSet", "insert").kind, VerdictKind::Valid);
}

TEST(CheckOp, AscendingVecInsertWitnessReplays) {
  Fixture f;
  for (const char* c : {"Vec", "LinkedList"}) {
    Verdict v = f.on_op("ascending", c, "insert");
    ASSERT_EQ(v.kind, VerdictKind::Invalid) << c;
    ASSERT_TRUE(v.counterexample);
    const auto& cx = *v.counterexample;
    EXPECT_EQ(cx.op, "insert");
    EXPECT_TRUE(oracle::ascending(cx.xs0));
    EXPECT_FALSE(oracle::ascending(cx.xs));
    ModelList expect = cx.xs0;
    expect.push_back(*cx.aux);
    EXPECT_EQ(cx.xs, expect);
    EXPECT_TRUE(cx.output.empty());

    ContainerModel m(*testutil::catalogue().find(c), f.cfg.domain(), f.spec.definitions());
    Value p = m.context().eval(var("ascending"));
    EXPECT_TRUE(replay(cx, m, p));
    auto forged = cx;
    forged.xs = cx.xs0;
    EXPECT_FALSE(replay(forged, m, p));
  }
}

TEST(CheckOp, UniqueVecInsertInvalid) {
  Fixture f;
  Verdict v = f.on_op("unique", "Vec", "insert");
  ASSERT_EQ(v.kind, VerdictKind::Invalid);
  EXPECT_FALSE(oracle::unique(v.counterexample->xs));
  EXPECT_EQ(f.on_op("unique", "UniqueVec", "insert").kind, VerdictKind::Valid);
}

TEST(CheckOp, UnsatisfiablePropertyIsVacuous) {
  Fixture f;
  for (const auto& c : testutil::catalogue().containers) {
    for (const auto& t : c.triples) {
      EXPECT_EQ(f.on_op("never", c.name, t.op).kind, VerdictKind::Vacuous) << c.name << "::" << t.op;
    }
  }
}

TEST(CheckOp, TimeoutReported) {
  Fixture f;
  const ContainerSpec& c = *testutil::catalogue().find("Vec");
  ContainerModel m(c, f.cfg.domain(), f.spec.definitions());
  Deadline expired(1e-9);
  Verdict v = check_property_on_op(m, m.context().eval(var("unique")), "unique", *c.triple("insert"), f.cfg,
                                   expired);
  EXPECT_EQ(v.kind, VerdictKind::Timeout);
}

TEST(CheckOp, EvaluationErrorReported) {
  Fixture f;
  f.cfg.fuel = 5;
  Verdict v = f.on_op("unique", "Vec", "insert");
  EXPECT_EQ(v.kind, VerdictKind::Error);
  EXPECT_FALSE(v.message.empty());
}

TEST(Interaction, LifoStack) {
  Fixture f;
  EXPECT_EQ(f.interaction("lifo", "Stack").kind, VerdictKind::Valid);
}

TEST(Interaction, LifoQueue) {
  Fixture f;
  Verdict v = f.interaction("lifo", "Queue");
  ASSERT_EQ(v.kind, VerdictKind::Invalid);
  EXPECT_EQ(v.op, kInteractionOp);
  ASSERT_TRUE(v.counterexample);
  EXPECT_FALSE(v.counterexample->xs0.empty());
  ContainerModel m(*testutil::catalogue().find("Queue"), f.cfg.domain(), f.spec.definitions());
  EXPECT_TRUE(replay(*v.counterexample, m, m.context().eval(var("lifo"))));
}

TEST(Interaction, LifoStackEmptyOnly) {
  Fixture f;
  f.cfg.model_size = 0;
  f.cfg.domain_size = 2;
  EXPECT_EQ(f.interaction("lifo", "Stack").kind, VerdictKind::Valid);
  // Only the empty state is admissible, so the closed formula holds for the
  // queue too; its insert then leaves a state where lifo fails.
  const ContainerSpec& q = *testutil::catalogue().find("Queue");
  ContainerModel m(q, f.cfg.domain(), f.spec.definitions());
  Value lifo = m.context().eval(var("lifo"));
  EXPECT_EQ(check_interaction_formula(m, lifo, "lifo", f.cfg).kind, VerdictKind::Valid);
  Verdict v = f.interaction("lifo", "Queue");
  ASSERT_EQ(v.kind, VerdictKind::Invalid);
  EXPECT_NE(v.op, kInteractionOp);
}

TEST(Config, DomainMustCoverModelSize) {
  CheckConfig cfg;
  cfg.model_size = 3;
  cfg.domain_size = 3;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.domain_size = 4;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(CheckConfig{}.domain(), 4);
}

TEST(Select, AscendingStandardContainers) {
  auto r = run("ascending.prs", standard4());
  const auto& t = testutil::only_type(r);
  EXPECT_EQ(t.candidates, (std::vector<std::string>{"BTreeSet", "LinkedList", "Vec"}));
  EXPECT_EQ(t.valid, std::vector<std::string>{"BTreeSet"});
}

TEST(Select, AscendingFullCatalogue) {
  auto r = run("ascending.prs", testutil::catalogue());
  EXPECT_EQ(testutil::only_type(r).valid,
            (std::vector<std::string>{"BTreeSet", "LazySortedVec", "SortedVec"}));
}

TEST(Select, DescendingNothing) {
  auto r = run("descending.prs", testutil::catalogue());
  EXPECT_TRUE(testutil::only_type(r).valid.empty());
  EXPECT_EQ(testutil::only_type(r).candidates.size(), 10u);
}

TEST(Select, Unique) {
  auto r = run("unique.prs", testutil::catalogue());
  EXPECT_EQ(testutil::only_type(r).valid,
            (std::vector<std::string>{"BTreeSet", "HashSet", "LazyUniqueVec", "UniqueVec"}));
}

TEST(Select, Lifo) {
  auto r = run("lifo.prs", testutil::catalogue());
  const auto& t = testutil::only_type(r);
  EXPECT_EQ(t.candidates, (std::vector<std::string>{"Queue", "Stack"}));
  EXPECT_EQ(t.valid, std::vector<std::string>{"Stack"});
  const auto& queue = t.results[0];
  bool interaction_failed = false;
  for (const auto& c : queue.checks) {
    if (c.verdict.op == kInteractionOp) interaction_failed = c.verdict.kind == VerdictKind::Invalid;
  }
  EXPECT_TRUE(interaction_failed);
}

TEST(Select, OnlyDeclaredOperationsChecked) {
  // ascending is broken by Vec::insert, which is outside a bound-free
  // declaration's operations; nothing is checked and every entry passes.
  auto spec = testutil::typed(R"(
    property ascending { \c -> for-all-consecutive-pairs c (\a b -> leq? a b) }
    type Loose<T> = {c <: (IndexableT) | ascending c}
  )");
  auto r = select(spec, testutil::catalogue(), CheckConfig{});
  EXPECT_EQ(r.types[0].candidates.size(), 7u);
  EXPECT_EQ(r.types[0].valid.size(), 7u);
}

TEST(Select, MultipleTypes) {
  auto spec = testutil::typed(std::string(agreement::kProperties) + R"(
    type U<T> = {c <: (ContainerT) | unique c}
    type S<T> = {c <: (ContainerT, StackT) | lifo c}
  )");
  auto r = select(spec, testutil::catalogue(), CheckConfig{});
  ASSERT_EQ(r.types.size(), 2u);
  EXPECT_EQ(r.find("S")->valid, std::vector<std::string>{"Stack"});
  EXPECT_EQ(r.find("U")->valid.size(), 4u);
}

TEST(Select, NeverIsNeverValid) {
  auto spec = testutil::typed(R"(
    property never { \c -> false }
    type Nothing<T> = {c <: (ContainerT) | never c}
  )");
  auto r = select(spec, testutil::catalogue(), CheckConfig{});
  EXPECT_TRUE(r.types[0].valid.empty());
  for (const auto& cand : r.types[0].results) {
    for (const auto& c : cand.checks) EXPECT_EQ(c.verdict.kind, VerdictKind::Vacuous);
  }
}

TEST(Select, InvalidityMonotoneInModelSize) {
  // A counterexample found at size k remains one at every larger size, so
  // valid sets can only shrink as k grows.
  for (const char* sample : {"unique.prs", "ascending.prs", "strictly_ascending.prs", "lifo.prs"}) {
    std::vector<std::string> prev;
    for (int k = 0; k <= 3; ++k) {
      auto valid = testutil::only_type(run(sample, testutil::catalogue(), k)).valid;
      if (k > 0) {
        EXPECT_TRUE(std::includes(prev.begin(), prev.end(), valid.begin(), valid.end())) << sample << " k=" << k;
      }
      prev = valid;
    }
  }
}

TEST(Select, DomainSizeBeyondMinimumAgrees) {
  for (const char* sample : {"unique.prs", "ascending.prs", "lifo.prs", "descending.prs"}) {
    auto spec = testutil::typed_file(sample);
    CheckConfig small, large;
    small.model_size = large.model_size = 2;
    large.domain_size = 6;
    EXPECT_EQ(select(spec, testutil::catalogue(), small).types[0].valid,
              select(spec, testutil::catalogue(), large).types[0].valid)
        << sample;
  }
}

TEST(Select, CatalogueOrderIrrelevant) {
  Catalogue reversed = testutil::catalogue();
  std::reverse(reversed.containers.begin(), reversed.containers.end());
  auto a = testutil::only_type(run("unique.prs", testutil::catalogue())).valid;
  auto b = testutil::only_type(run("unique.prs", reversed)).valid;
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
}

TEST(Select, ThreadCountDoesNotChangeReport) {
  for (const char* sample : {"unique.prs", "lifo.prs"}) {
    auto one = to_json(run(sample, testutil::catalogue(), 3, 1)).dump();
    auto four = to_json(run(sample, testutil::catalogue(), 3, 4)).dump();
    EXPECT_EQ(one, four) << sample;
  }
}

TEST(Select, ReportJsonShape) {
  auto j = to_json(run("ascending.prs", standard4()));
  EXPECT_EQ(j["model_size"], 3);
  EXPECT_EQ(j["domain_size"], 4);
  ASSERT_EQ(j["types"].size(), 1u);
  EXPECT_EQ(j["types"][0]["valid"], nlohmann::json::array({"BTreeSet"}));
  EXPECT_EQ(j.dump().find("elapsed"), std::string::npos);
}

TEST(Select, AgreesWithReference) {
  auto out = agreement::compare(2);
  EXPECT_GT(out.comparisons, 300);
  EXPECT_TRUE(out.disagreements.empty()) << out.disagreements.front();
}
