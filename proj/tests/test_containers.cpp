#include <gtest/gtest.h>

#include <random>
#include <string>

#include "cselect/containers.hpp"

using namespace cselect;

static_assert(ContainerT<Vec<int>> && IndexableT<Vec<int>> && !StackT<Vec<int>>);
static_assert(ContainerT<LinkedList<int>> && IndexableT<LinkedList<int>>);
static_assert(ContainerT<SortedVec<int>> && IndexableT<SortedVec<int>>);
static_assert(ContainerT<LazySortedVec<int>> && IndexableT<LazySortedVec<int>>);
static_assert(ContainerT<UniqueVec<int>> && IndexableT<UniqueVec<int>>);
static_assert(ContainerT<LazyUniqueVec<int>> && IndexableT<LazyUniqueVec<int>>);
static_assert(ContainerT<HashSet<int>> && !IndexableT<HashSet<int>>);
static_assert(ContainerT<BTreeSet<int>> && IndexableT<BTreeSet<int>>);
static_assert(ContainerT<Stack<int>> && StackT<Stack<int>> && !IndexableT<Stack<int>>);
static_assert(ContainerT<Queue<int>> && StackT<Queue<int>>);
static_assert(ContainerT<BTreeSet<std::string>>);

namespace {

template <class C>
std::vector<int> model(const C& c) {
  return abstraction(c);
}

template <class C>
class AllContainers : public ::testing::Test {};

using Types = ::testing::Types<Vec<int>, LinkedList<int>, SortedVec<int>, LazySortedVec<int>, UniqueVec<int>,
                               LazyUniqueVec<int>, HashSet<int>, BTreeSet<int>, Stack<int>, Queue<int>>;
TYPED_TEST_SUITE(AllContainers, Types);

}  // namespace

TYPED_TEST(AllContainers, FreshIsEmpty) {
  TypeParam c;
  EXPECT_TRUE(c.is_empty());
  EXPECT_EQ(c.len(), 0u);
  EXPECT_FALSE(c.contains(1));
  EXPECT_EQ(c.remove(1), std::nullopt);
  EXPECT_TRUE(model(c).empty());
}

TYPED_TEST(AllContainers, InsertRemoveClear) {
  TypeParam c;
  c.insert(4);
  c.insert(2);
  EXPECT_TRUE(c.contains(4));
  EXPECT_EQ(c.len(), 2u);
  EXPECT_EQ(c.remove(4), std::optional<int>(4));
  EXPECT_FALSE(c.contains(4));
  EXPECT_EQ(c.remove(4), std::nullopt);
  c.clear();
  EXPECT_TRUE(c.is_empty());
}

TEST(Containers, UniqueVecRejectsDuplicates) {
  UniqueVec<int> u;
  u.insert(3);
  u.insert(3);
  EXPECT_EQ(u.len(), 1u);
  LazyUniqueVec<int> l;
  l.insert(3);
  l.insert(3);
  EXPECT_EQ(l.len(), 1u);
}

TEST(Containers, BTreeSetOrder) {
  BTreeSet<int> s;
  s.insert(2);
  s.insert(1);
  EXPECT_EQ(model(s), (std::vector<int>{1, 2}));
  s.insert(3);
  EXPECT_EQ(s.first(), std::optional<int>(1));
  EXPECT_EQ(s.last(), std::optional<int>(3));
  EXPECT_EQ(s.nth(1), std::optional<int>(2));
  EXPECT_EQ(s.nth(3), std::nullopt);
}

TEST(Containers, EmptyIndexing) {
  Vec<int> v;
  EXPECT_EQ(v.first(), std::nullopt);
  EXPECT_EQ(v.last(), std::nullopt);
  EXPECT_EQ(v.nth(0), std::nullopt);
}

TEST(Containers, LazySortedVecIndexes) {
  LazySortedVec<int> v;
  for (int x : {3, 1, 2}) v.insert(x);
  EXPECT_EQ(v.nth(1), std::optional<int>(2));
  EXPECT_EQ(model(v), (std::vector<int>{1, 2, 3}));
}

TEST(Containers, SequenceOrderKept) {
  Vec<int> v;
  LinkedList<int> l;
  for (int x : {3, 1, 3}) {
    v.insert(x);
    l.insert(x);
  }
  EXPECT_EQ(model(v), (std::vector<int>{3, 1, 3}));
  EXPECT_EQ(model(l), model(v));
  EXPECT_EQ(v.remove(3), std::optional<int>(3));
  EXPECT_EQ(model(v), (std::vector<int>{1, 3}));
}

TEST(Containers, HashSetAbstractionSorted) {
  HashSet<int> h;
  for (int x : {30, 10, 20, 10}) h.insert(x);
  EXPECT_EQ(model(h), (std::vector<int>{10, 20, 30}));
}

TEST(Containers, StackIsLifo) {
  Stack<int> s;
  s.push(1);
  s.push(2);
  EXPECT_EQ(s.pop(), std::optional<int>(2));
  EXPECT_EQ(s.pop(), std::optional<int>(1));
  EXPECT_EQ(s.pop(), std::nullopt);
}

TEST(Containers, QueueIsFifo) {
  Queue<int> q;
  q.push(1);
  q.push(2);
  EXPECT_EQ(q.pop(), std::optional<int>(1));
  EXPECT_EQ(model(q), (std::vector<int>{2}));
}

TEST(Containers, NonIntElements) {
  BTreeSet<std::string> s;
  s.insert("b");
  s.insert("a");
  EXPECT_EQ(s.first(), std::optional<std::string>("a"));
}

namespace {

// Drives two containers with the same random operations and compares
// every observation.
template <class Eager, class Lazy>
void expect_same_behaviour(std::uint32_t seed) {
  Eager e;
  Lazy l;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> elem(0, 50), pick(0, 9);
  for (int step = 0; step < 200; ++step) {
    int x = elem(rng);
    switch (pick(rng)) {
      case 0:
      case 1:
      case 2:
      case 3:
        e.insert(x);
        l.insert(x);
        break;
      case 4: ASSERT_EQ(e.remove(x), l.remove(x)) << "step " << step; break;
      case 5: ASSERT_EQ(e.contains(x), l.contains(x)) << "step " << step; break;
      case 6: ASSERT_EQ(e.nth(static_cast<std::size_t>(x % 8)), l.nth(static_cast<std::size_t>(x % 8))); break;
      case 7:
        ASSERT_EQ(e.first(), l.first());
        ASSERT_EQ(e.last(), l.last());
        break;
      case 8:
        if (x < 3) {
          e.clear();
          l.clear();
        }
        break;
      default:
        ASSERT_EQ(e.len(), l.len());
        ASSERT_EQ(e.is_empty(), l.is_empty());
    }
    ASSERT_EQ(model(e), model(l)) << "step " << step;
  }
}

}  // namespace

TEST(Containers, LazySortedMatchesEager) {
  for (std::uint32_t seed = 1; seed <= 20; ++seed) expect_same_behaviour<SortedVec<int>, LazySortedVec<int>>(seed);
}

TEST(Containers, LazyUniqueMatchesEager) {
  for (std::uint32_t seed = 1; seed <= 20; ++seed) expect_same_behaviour<UniqueVec<int>, LazyUniqueVec<int>>(seed);
}

TEST(Containers, BTreeSetMatchesSortedUniqueVec) {
  // Both keep a strictly ascending abstraction.
  BTreeSet<int> s;
  LazyUniqueVec<int> u;
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> elem(0, 50);
  for (int i = 0; i < 200; ++i) {
    int x = elem(rng);
    s.insert(x);
    u.insert(x);
    auto m = model(u);
    std::sort(m.begin(), m.end());
    ASSERT_EQ(model(s), m);
  }
}
