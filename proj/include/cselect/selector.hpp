#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "cselect/library_spec.hpp"
#include "cselect/typecheck.hpp"

namespace cselect {

struct CheckConfig {
  int model_size = 3;
  int domain_size = -1;  // defaults to model_size + 1
  double budget_secs = 30.0;
  int threads = 1;
  long fuel = kDefaultFuel;

  int domain() const { return domain_size < 0 ? model_size + 1 : domain_size; }

  // Every order type of a list of k elements plus one argument must be
  // representable in the element domain.
  void validate() const {
    if (model_size < 0) throw std::invalid_argument("model size must be non-negative");
    if (domain() < model_size + 1) {
      throw std::invalid_argument("domain size " + std::to_string(domain()) +
                                  " is smaller than model size + 1 = " + std::to_string(model_size + 1));
    }
    if (budget_secs <= 0) throw std::invalid_argument("budget must be positive");
    if (threads < 1) throw std::invalid_argument("thread count must be positive");
  }
};

inline constexpr const char* kInteractionOp = "<interaction>";

struct CounterexampleTrace {
  std::string property;
  std::string op;
  ModelList xs0;
  std::optional<int> aux;
  ModelList xs;
  std::string output;
};

enum class VerdictKind { Valid, Invalid, Vacuous, Timeout, Error };

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Valid: return "valid";
    case VerdictKind::Invalid: return "invalid";
    case VerdictKind::Vacuous: return "vacuous";
    case VerdictKind::Timeout: return "timeout";
    case VerdictKind::Error: return "error";
  }
  return "?";
}

struct Verdict {
  VerdictKind kind = VerdictKind::Valid;
  std::string op;
  std::optional<CounterexampleTrace> counterexample;
  std::string message;

  bool valid() const { return kind == VerdictKind::Valid; }
};

// Wall-clock limit shared by all checks of one candidate.
class Deadline {
 public:
  Deadline() = default;
  explicit Deadline(double secs)
      : end_(std::chrono::steady_clock::now() +
             std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                 std::chrono::duration<double>(secs))),
        bounded_(true) {}
  bool expired() const { return bounded_ && std::chrono::steady_clock::now() >= end_; }

 private:
  std::chrono::steady_clock::time_point end_{};
  bool bounded_ = false;
};

// P(xs0) and phi(xs0, u) imply P(xs), for every xs0 of length <= k and every
// argument u in the domain. phi is the container invariant together with the
// operation's precondition. Returns the first witness in enumeration order.
inline Verdict check_property_on_op(ContainerModel& model, const Value& property,
                                    const std::string& property_name, const HoareSpec& t,
                                    const CheckConfig& cfg, const Deadline& deadline = {}) {
  const int k = cfg.model_size, m = cfg.domain();
  Verdict v{VerdictKind::Valid, t.op, std::nullopt, {}};
  bool satisfied = false;
  try {
    bool finished = for_each_list(k, m, [&](const ModelList& xs0) {
      if (deadline.expired()) {
        v.kind = VerdictKind::Timeout;
        return false;
      }
      if (!model.invariant(xs0) || !model.check(property, xs0)) return true;
      const int n_aux = t.shape.has_aux() ? m : 1;
      for (int a = 0; a < n_aux; ++a) {
        std::optional<int> aux = t.shape.has_aux() ? std::optional<int>(a) : std::nullopt;
        if (!model.pre(t, xs0, aux)) continue;
        satisfied = true;
        ModelStep step = model.apply(t, xs0, aux);
        if (!model.check(property, step.post)) {
          v.kind = VerdictKind::Invalid;
          v.counterexample =
              CounterexampleTrace{property_name, t.op, xs0, aux, step.post,
                                  t.shape.paired() ? step.output.to_string() : ""};
          return false;
        }
      }
      return true;
    });
    if (finished && !satisfied) {
      v.kind = VerdictKind::Vacuous;
      v.message = "no state satisfies both the property and the precondition of " + t.op;
    }
  } catch (const EvalError& e) {
    v.kind = VerdictKind::Error;
    v.message = e.what();
  }
  return v;
}

// Evaluates a property that mentions interface operations as a closed
// formula over every state xs0 (length <= k) satisfying the container
// invariant; operations are bound to the container's model operations.
inline Verdict check_interaction_formula(ContainerModel& model, const Value& property,
                                         const std::string& property_name, const CheckConfig& cfg,
                                         const Deadline& deadline = {}) {
  Verdict v{VerdictKind::Valid, kInteractionOp, std::nullopt, {}};
  bool any = false;
  try {
    bool finished = for_each_list(cfg.model_size, cfg.domain(), [&](const ModelList& xs0) {
      if (deadline.expired()) {
        v.kind = VerdictKind::Timeout;
        return false;
      }
      if (!model.invariant(xs0)) return true;
      any = true;
      if (!model.check(property, xs0)) {
        v.kind = VerdictKind::Invalid;
        v.counterexample = CounterexampleTrace{property_name, kInteractionOp, xs0, std::nullopt, xs0, ""};
        return false;
      }
      return true;
    });
    if (finished && !any) {
      v.kind = VerdictKind::Vacuous;
      v.message = "the container invariant admits no state";
    }
  } catch (const EvalError& e) {
    v.kind = VerdictKind::Error;
    v.message = e.what();
  }
  return v;
}

// Closed-formula check followed by the invariant check on every operation
// of the specification. Returns the first verdict that is not Valid.
inline Verdict check_interaction_property(ContainerModel& model, const Value& property,
                                          const std::string& property_name, const CheckConfig& cfg,
                                          const Deadline& deadline = {}) {
  Verdict v = check_interaction_formula(model, property, property_name, cfg, deadline);
  if (!v.valid()) return v;
  for (const auto& t : model.spec().triples) {
    v = check_property_on_op(model, property, property_name, t, cfg, deadline);
    if (!v.valid()) return v;
  }
  return v;
}

// Containers whose interface list includes every bound, in catalogue order.
inline std::vector<const ContainerSpec*> filter_syntactic(const std::vector<std::string>& bounds,
                                                          const Catalogue& cat) {
  for (const auto& b : bounds) {
    if (!cat.interfaces.find(b)) throw std::invalid_argument("unknown interface '" + b + "'");
  }
  std::vector<const ContainerSpec*> out;
  for (const auto& c : cat.containers) {
    if (std::all_of(bounds.begin(), bounds.end(), [&](const std::string& b) { return c.implements(b); })) {
      out.push_back(&c);
    }
  }
  return out;
}

inline std::vector<const ContainerSpec*> filter_syntactic(const ContainerTypeDecl& decl,
                                                          const Catalogue& cat) {
  return filter_syntactic(decl.bounds, cat);
}

struct PropertyCheck {
  std::string property;
  Verdict verdict;
};

struct CandidateReport {
  std::string container;
  std::vector<PropertyCheck> checks;
  bool selected = false;
  double elapsed_secs = 0;
};

struct TypeReport {
  std::string type;
  std::vector<std::string> bounds;
  std::vector<std::string> properties;
  std::vector<std::string> candidates;
  std::vector<CandidateReport> results;
  std::vector<std::string> valid;
};

struct SelectionReport {
  int model_size = 0;
  int domain_size = 0;
  std::vector<TypeReport> types;

  const TypeReport* find(const std::string& type) const {
    for (const auto& t : types) {
      if (t.type == type) return &t;
    }
    return nullptr;
  }
};

// Checks one candidate against every refinement conjunct of `decl`: each
// conjunct is an invariant of every operation of the declared interfaces,
// and conjuncts that use interface operations are also checked as closed
// formulas.
inline CandidateReport check_candidate(const TypedSpec& spec, const TypedContainerType& decl,
                                       const ContainerSpec& container, const Catalogue& cat,
                                       const CheckConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  CandidateReport r;
  r.container = container.name;
  Deadline deadline(cfg.budget_secs);

  std::vector<const HoareSpec*> ops;
  for (const auto& b : decl.decl.bounds) {
    for (const auto& op : cat.interfaces.find(b)->operations) {
      if (const HoareSpec* t = container.triple(op.name)) ops.push_back(t);
    }
  }

  try {
    ContainerModel model(container, cfg.domain(), spec.definitions());
    model.set_fuel_limit(cfg.fuel);
    for (const auto& c : decl.conjuncts) {
      Value p = model.context().eval(lambda(decl.decl.var, c.resolved));
      if (!c.required_interfaces.empty()) {
        r.checks.push_back({c.text, check_interaction_formula(model, p, c.text, cfg, deadline)});
      }
      for (const HoareSpec* t : ops) {
        r.checks.push_back({c.text, check_property_on_op(model, p, c.text, *t, cfg, deadline)});
      }
    }
  } catch (const EvalError& e) {
    r.checks.push_back({"", Verdict{VerdictKind::Error, "", std::nullopt, e.what()}});
  }
  r.selected = std::all_of(r.checks.begin(), r.checks.end(),
                           [](const PropertyCheck& c) { return c.verdict.valid(); });
  r.elapsed_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// Runs `n` independent jobs on up to `threads` workers; results keep job order.
template <class R>
std::vector<R> run_indexed(std::size_t n, int threads, const std::function<R(std::size_t)>& job) {
  std::vector<R> out(n);
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = job(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < threads && static_cast<std::size_t>(w) < n; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) out[i] = job(i);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

// Filters the catalogue by each declared type's bounds and checks every
// candidate. The report does not depend on cfg.threads.
inline SelectionReport select(const TypedSpec& spec, const Catalogue& cat, const CheckConfig& cfg) {
  cfg.validate();
  SelectionReport report;
  report.model_size = cfg.model_size;
  report.domain_size = cfg.domain();
  for (const auto& decl : spec.types) {
    TypeReport tr;
    tr.type = decl.decl.name;
    tr.bounds = decl.decl.bounds;
    for (const auto& c : decl.conjuncts) tr.properties.push_back(c.text);
    auto candidates = filter_syntactic(decl.decl, cat);
    for (const auto* c : candidates) tr.candidates.push_back(c->name);
    tr.results = run_indexed<CandidateReport>(candidates.size(), cfg.threads, [&](std::size_t i) {
      return check_candidate(spec, decl, *candidates[i], cat, cfg);
    });
    for (const auto& r : tr.results) {
      if (r.selected) tr.valid.push_back(r.container);
    }
    report.types.push_back(std::move(tr));
  }
  return report;
}

// Re-checks a counterexample by direct evaluation: P(xs0), the invariant and
// precondition hold, xs is the model operation's result and P(xs) fails.
inline bool replay(const CounterexampleTrace& cx, ContainerModel& model, const Value& property) {
  if (cx.op == kInteractionOp) return model.invariant(cx.xs0) && !model.check(property, cx.xs0);
  const HoareSpec* t = model.spec().triple(cx.op);
  if (!t) return false;
  if (!model.check(property, cx.xs0) || !model.invariant(cx.xs0) || !model.pre(*t, cx.xs0, cx.aux)) {
    return false;
  }
  ModelStep step = model.apply(*t, cx.xs0, cx.aux);
  return step.post == cx.xs && !model.check(property, step.post);
}

inline nlohmann::json to_json(const Verdict& v) {
  nlohmann::json j{{"op", v.op}, {"verdict", to_string(v.kind)}};
  if (!v.message.empty()) j["message"] = v.message;
  if (v.counterexample) {
    const auto& c = *v.counterexample;
    j["counterexample"] = {{"xs0", c.xs0}, {"xs", c.xs}};
    if (c.aux) j["counterexample"]["arg"] = *c.aux;
    if (!c.output.empty()) j["counterexample"]["output"] = c.output;
  }
  return j;
}

inline nlohmann::json to_json(const SelectionReport& r) {
  nlohmann::json types = nlohmann::json::array();
  for (const auto& t : r.types) {
    nlohmann::json results = nlohmann::json::array();
    for (const auto& c : t.results) {
      nlohmann::json checks = nlohmann::json::array();
      for (const auto& pc : c.checks) {
        auto j = to_json(pc.verdict);
        j["property"] = pc.property;
        checks.push_back(std::move(j));
      }
      results.push_back({{"container", c.container}, {"selected", c.selected}, {"checks", checks}});
    }
    types.push_back({{"type", t.type},
                     {"bounds", t.bounds},
                     {"properties", t.properties},
                     {"candidates", t.candidates},
                     {"results", results},
                     {"valid", t.valid}});
  }
  return {{"model_size", r.model_size}, {"domain_size", r.domain_size}, {"types", types}};
}

}  // namespace cselect
