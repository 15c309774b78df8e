#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cselect/containers.hpp"
#include "cselect/library_spec.hpp"

namespace cselect {

// Bumped whenever case generation changes; recorded cases from another
// version cannot be replayed.
inline constexpr int kGeneratorVersion = 1;

struct ConformanceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Type-erased container over int elements. Operations return results in
// model shape: the post-state list, or (post-state, value).
class DynContainer {
 public:
  virtual ~DynContainer() = default;
  virtual ModelList model() const = 0;
  virtual bool supports(const std::string& op) const = 0;
  virtual Value call(const std::string& op, std::optional<int> arg) = 0;
};

template <class C>
class DynAdapter final : public DynContainer {
 public:
  ModelList model() const override {
    auto m = abstraction(c_);
    return ModelList(m.begin(), m.end());
  }

  bool supports(const std::string& op) const override { return table().count(op) != 0; }

  Value call(const std::string& op, std::optional<int> arg) override {
    auto it = table().find(op);
    if (it == table().end()) throw ConformanceError("operation '" + op + "' not implemented");
    return it->second(c_, arg.value_or(0), *this);
  }

 private:
  using Fn = std::function<Value(C&, int, const DynAdapter&)>;

  static Value with(const DynAdapter& self, Value v) { return Value::pair(self.model(), std::move(v)); }
  static Value opt(const std::optional<int>& v) { return Value::opt_elem(v); }

  static const std::map<std::string, Fn>& table() {
    static const std::map<std::string, Fn> t = [] {
      std::map<std::string, Fn> t;
      if constexpr (ContainerT<C>) {
        t["len"] = [](C& c, int, const DynAdapter& s) {
          return with(s, Value::elem(static_cast<int>(c.len())));
        };
        t["contains"] = [](C& c, int x, const DynAdapter& s) { return with(s, c.contains(x)); };
        t["is_empty"] = [](C& c, int, const DynAdapter& s) { return with(s, c.is_empty()); };
        t["insert"] = [](C& c, int x, const DynAdapter& s) {
          c.insert(x);
          return Value(s.model());
        };
        t["clear"] = [](C& c, int, const DynAdapter& s) {
          c.clear();
          return Value(s.model());
        };
        t["remove"] = [](C& c, int x, const DynAdapter& s) {
          auto r = c.remove(x);
          return with(s, opt(r));
        };
      }
      if constexpr (IndexableT<C>) {
        t["first"] = [](C& c, int, const DynAdapter& s) { return with(s, opt(c.first())); };
        t["last"] = [](C& c, int, const DynAdapter& s) { return with(s, opt(c.last())); };
        t["nth"] = [](C& c, int n, const DynAdapter& s) {
          if (n < 0) return with(s, Value());
          return with(s, opt(c.nth(static_cast<std::size_t>(n))));
        };
      }
      if constexpr (StackT<C>) {
        t["push"] = [](C& c, int x, const DynAdapter& s) {
          c.push(x);
          return Value(s.model());
        };
        t["pop"] = [](C& c, int, const DynAdapter& s) {
          auto r = c.pop();
          return with(s, opt(r));
        };
      }
      return t;
    }();
    return t;
  }

  C c_;
};

struct ImplHandle {
  std::string name;       // reported name
  std::string spec_name;  // catalogue entry checked against
  std::function<std::unique_ptr<DynContainer>()> make;
};

template <class C>
ImplHandle impl_handle(std::string name, std::string spec_name = {}) {
  if (spec_name.empty()) spec_name = name;
  return {std::move(name), std::move(spec_name), [] { return std::make_unique<DynAdapter<C>>(); }};
}

inline std::vector<ImplHandle> standard_impls() {
  return {
      impl_handle<BTreeSet<int>>("BTreeSet"),
      impl_handle<HashSet<int>>("HashSet"),
      impl_handle<LazySortedVec<int>>("LazySortedVec"),
      impl_handle<LazyUniqueVec<int>>("LazyUniqueVec"),
      impl_handle<LinkedList<int>>("LinkedList"),
      impl_handle<Queue<int>>("Queue"),
      impl_handle<SortedVec<int>>("SortedVec"),
      impl_handle<Stack<int>>("Stack"),
      impl_handle<UniqueVec<int>>("UniqueVec"),
      impl_handle<Vec<int>>("Vec"),
  };
}

struct ConformanceConfig {
  int cases_per_op = 100;
  std::uint64_t seed = 0;
  int max_length = 20;
  int element_range = 24;  // elements drawn from 0..element_range-1
  int max_attempts = 100;  // per case, to satisfy the precondition
};

struct TestCase {
  std::string impl;
  std::string op;
  int index = 0;
  std::uint64_t seed = 0;  // run seed
  int generator_version = kGeneratorVersion;
};

enum class FailureKind { Mismatch, InvariantViolated, GeneratorError, Error };

inline const char* to_string(FailureKind k) {
  switch (k) {
    case FailureKind::Mismatch: return "mismatch";
    case FailureKind::InvariantViolated: return "invariant-violated";
    case FailureKind::GeneratorError: return "generator-error";
    case FailureKind::Error: return "error";
  }
  return "?";
}

struct CaseFailure {
  TestCase test;
  FailureKind kind;
  std::vector<std::pair<std::string, int>> setup;  // operations that built the state
  ModelList xs0;
  std::optional<int> arg;
  std::string expected;  // model operation on the abstraction
  std::string actual;    // abstraction of the implementation's result
  std::string message;
};

struct CaseResult {
  bool passed = true;
  std::size_t state_size = 0;
  std::optional<CaseFailure> failure;
};

struct OpReport {
  std::string impl;
  std::string op;
  int cases = 0;
  std::vector<CaseFailure> failures;
  std::size_t min_state = 0, max_state = 0;
};

struct ConformanceReport {
  std::uint64_t seed = 0;
  int generator_version = kGeneratorVersion;
  std::vector<OpReport> entries;

  int total_cases() const {
    int n = 0;
    for (const auto& e : entries) n += e.cases;
    return n;
  }
  int total_failures() const {
    int n = 0;
    for (const auto& e : entries) n += static_cast<int>(e.failures.size());
    return n;
  }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

inline std::uint64_t case_seed(const TestCase& t) {
  std::uint64_t h = splitmix64(t.seed);
  h = splitmix64(h ^ fnv1a(t.impl));
  h = splitmix64(h ^ fnv1a(t.op));
  return splitmix64(h ^ static_cast<std::uint64_t>(t.index));
}

}  // namespace detail

// Runs one case: builds a state by a random operation sequence (case 0 is
// the empty state, case 1 a single element), draws an argument satisfying
// the precondition, and compares the implementation's result, abstracted,
// with the model operation applied to the abstracted pre-state.
inline CaseResult run_case(const TestCase& t, const ImplHandle& impl, ContainerModel& model,
                           const ConformanceConfig& cfg) {
  if (t.generator_version != kGeneratorVersion) {
    throw ConformanceError("case generated by version " + std::to_string(t.generator_version) +
                           ", this build generates version " + std::to_string(kGeneratorVersion));
  }
  const HoareSpec* triple = model.spec().triple(t.op);
  if (!triple) throw ConformanceError(impl.spec_name + " has no operation '" + t.op + "'");

  std::mt19937_64 rng(detail::case_seed(t));
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int hi_elem = cfg.element_range - 1;

  CaseResult result;
  CaseFailure f{t, FailureKind::GeneratorError, {}, {}, {}, {}, {}, {}};
  auto fail = [&](FailureKind kind, std::string msg) {
    f.kind = kind;
    f.message = std::move(msg);
    result.passed = false;
    result.failure = f;
    return result;
  };

  try {
    for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
      auto c = impl.make();
      f.setup.clear();
      const bool stack = c->supports("push");
      int target = t.index == 0 ? 0 : t.index == 1 ? 1 : uniform(0, cfg.max_length);
      if (attempt > 0 && t.index <= 1) target = uniform(0, cfg.max_length);
      int steps = 0;
      while (static_cast<int>(c->model().size()) < target && steps < 4 * cfg.max_length + 8) {
        ++steps;
        int roll = uniform(0, 9);
        std::string op = "insert";
        if (stack && roll < 3) op = "push";
        if (roll >= 8 && !c->model().empty()) op = stack && roll == 9 ? "pop" : "remove";
        int x = uniform(0, hi_elem);
        c->call(op, x);
        f.setup.emplace_back(op, op == "pop" ? 0 : x);
      }
      ModelList xs0 = c->model();
      f.xs0 = xs0;
      if (!model.invariant(xs0)) {
        return fail(FailureKind::InvariantViolated,
                    "state " + to_string(xs0) + " violates the " + impl.spec_name + " invariant");
      }
      std::optional<int> arg;
      if (triple->shape.input == OpInput::Elem) arg = uniform(0, hi_elem);
      if (triple->shape.input == OpInput::Index) arg = uniform(0, static_cast<int>(xs0.size()) + 1);
      f.arg = arg;
      if (!model.pre(*triple, xs0, arg)) continue;

      Value expected = model.apply_raw(*triple, xs0, arg);
      Value actual = c->call(t.op, arg);
      f.expected = expected.to_string();
      f.actual = actual.to_string();
      result.state_size = xs0.size();
      if (!(expected == actual)) return fail(FailureKind::Mismatch, "");
      ModelList post = c->model();
      if (!model.invariant(post)) {
        return fail(FailureKind::InvariantViolated, "post-state " + to_string(post) + " violates the invariant");
      }
      return result;
    }
  } catch (const ConformanceError&) {
    throw;
  } catch (const std::exception& e) {
    return fail(FailureKind::Error, e.what());
  }
  return fail(FailureKind::GeneratorError,
              "no state satisfying the precondition of " + t.op + " after " +
                  std::to_string(cfg.max_attempts) + " attempts");
}

// Checks every operation of each implementation's specification on
// `cases_per_op` generated cases. Deterministic for a given seed.
inline ConformanceReport run_conformance(const Catalogue& cat, const std::vector<ImplHandle>& impls,
                                         const ConformanceConfig& cfg) {
  ConformanceReport report;
  report.seed = cfg.seed;
  for (const auto& impl : impls) {
    const ContainerSpec* spec = cat.find(impl.spec_name);
    if (!spec) throw ConformanceError("no specification named '" + impl.spec_name + "'");
    ContainerModel model(*spec, cfg.element_range);
    for (const auto& triple : spec->triples) {
      OpReport entry{impl.name, triple.op, 0, {}, SIZE_MAX, 0};
      if (!impl.make()->supports(triple.op)) {
        entry.failures.push_back({{impl.name, triple.op, 0, cfg.seed}, FailureKind::Error, {}, {}, {}, {}, {},
                                  "operation not implemented"});
        entry.min_state = 0;
        report.entries.push_back(std::move(entry));
        continue;
      }
      for (int i = 0; i < cfg.cases_per_op; ++i) {
        TestCase t{impl.name, triple.op, i, cfg.seed, kGeneratorVersion};
        CaseResult r = run_case(t, impl, model, cfg);
        ++entry.cases;
        entry.min_state = std::min(entry.min_state, r.state_size);
        entry.max_state = std::max(entry.max_state, r.state_size);
        if (r.failure) entry.failures.push_back(std::move(*r.failure));
      }
      if (entry.cases == 0) entry.min_state = 0;
      report.entries.push_back(std::move(entry));
    }
  }
  return report;
}

// Re-executes a single recorded case.
inline CaseResult replay(const TestCase& t, const Catalogue& cat, const std::vector<ImplHandle>& impls,
                         const ConformanceConfig& cfg) {
  for (const auto& impl : impls) {
    if (impl.name != t.impl) continue;
    const ContainerSpec* spec = cat.find(impl.spec_name);
    if (!spec) throw ConformanceError("no specification named '" + impl.spec_name + "'");
    ContainerModel model(*spec, cfg.element_range);
    return run_case(t, impl, model, cfg);
  }
  throw ConformanceError("unknown implementation '" + t.impl + "'");
}

inline nlohmann::json to_json(const CaseFailure& f) {
  nlohmann::json setup = nlohmann::json::array();
  for (const auto& [op, x] : f.setup) setup.push_back({op, x});
  nlohmann::json j{{"impl", f.test.impl},
                   {"op", f.test.op},
                   {"case", f.test.index},
                   {"seed", f.test.seed},
                   {"generator_version", f.test.generator_version},
                   {"kind", to_string(f.kind)},
                   {"setup", setup},
                   {"xs0", f.xs0},
                   {"expected", f.expected},
                   {"actual", f.actual}};
  if (f.arg) j["arg"] = *f.arg;
  if (!f.message.empty()) j["message"] = f.message;
  return j;
}

inline nlohmann::json to_json(const ConformanceReport& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.entries) {
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : e.failures) failures.push_back(to_json(f));
    entries.push_back({{"impl", e.impl},
                       {"op", e.op},
                       {"cases", e.cases},
                       {"state_sizes", {e.min_state, e.max_state}},
                       {"failures", failures}});
  }
  return {{"seed", r.seed},
          {"generator_version", r.generator_version},
          {"total_cases", r.total_cases()},
          {"total_failures", r.total_failures()},
          {"entries", entries}};
}

}  // namespace cselect
