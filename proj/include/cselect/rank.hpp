#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cselect/codegen.hpp"

namespace cselect {

struct BenchmarkDescriptor {
  std::string workload;
  std::vector<long> sizes;
  int repetitions = 3;
  int insert = 1;
  int contains = 0;
  int remove = 0;
  int access = 0;
  int range = 1000;
  double duplication_rate = 0.0;
  std::uint64_t seed = 1;

  void validate() const {
    if (sizes.empty()) throw std::invalid_argument("benchmark needs at least one size");
    for (long s : sizes) {
      if (s <= 0) throw std::invalid_argument("benchmark sizes must be positive");
    }
    if (repetitions < 3) throw std::invalid_argument("benchmark needs at least 3 repetitions");
    if (range <= 0) throw std::invalid_argument("distribution range must be positive");
    if (duplication_rate < 0 || duplication_rate > 1) {
      throw std::invalid_argument("duplication rate must lie in [0, 1]");
    }
  }

  std::vector<std::string> program_args(long size) const {
    return {"--size",     std::to_string(size),    "--range",  std::to_string(range),
            "--dup-rate", std::to_string(duplication_rate), "--seed", std::to_string(seed),
            "--insert",   std::to_string(insert),  "--contains", std::to_string(contains),
            "--remove",   std::to_string(remove),  "--access", std::to_string(access)};
  }
};

// {
//   "workload": "unique-elements",
//   "sizes": [1000, 10000],
//   "repetitions": 3,
//   "op_mix": {"insert": 1, "contains": 1, "remove": 0, "access": 0},
//   "distribution": {"range": 1000, "duplication_rate": 0.5},
//   "seed": 42
// }
inline BenchmarkDescriptor parse_benchmark(const std::string& text) {
  BenchmarkDescriptor d;
  try {
    auto j = nlohmann::json::parse(text);
    d.workload = j.at("workload").get<std::string>();
    d.sizes = j.at("sizes").get<std::vector<long>>();
    d.repetitions = j.value("repetitions", 3);
    if (j.contains("op_mix")) {
      const auto& m = j["op_mix"];
      d.insert = m.value("insert", 1);
      d.contains = m.value("contains", 0);
      d.remove = m.value("remove", 0);
      d.access = m.value("access", 0);
    }
    if (j.contains("distribution")) {
      const auto& m = j["distribution"];
      d.range = m.value("range", 1000);
      d.duplication_rate = m.value("duplication_rate", 0.0);
    }
    d.seed = j.value("seed", std::uint64_t{1});
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("benchmark descriptor: ") + e.what());
  }
  d.validate();
  return d;
}

// Time source, in seconds. Replaceable for tests.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual double now() = 0;
};

class SteadyClock final : public Clock {
 public:
  double now() override {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
  }
};

// Runs a program; returns its exit status.
class Executor {
 public:
  virtual ~Executor() = default;
  virtual int run(const std::filesystem::path& program, const std::vector<std::string>& args,
                  std::string* output) = 0;
};

class ProcessExecutor final : public Executor {
 public:
  int run(const std::filesystem::path& program, const std::vector<std::string>& args,
          std::string* output) override {
    std::string cmd = shell_quote(program.string());
    for (const auto& a : args) cmd += " " + shell_quote(a);
    return run_command(cmd, output);
  }
};

struct SizeTiming {
  long size = 0;
  std::vector<double> samples;  // seconds, warmup excluded
  double median = 0;
  double mad = 0;  // median absolute deviation
};

struct RankEntry {
  std::string variant;
  std::vector<SizeTiming> timings;
  bool failed = false;
  std::string failure;
};

struct RankingReport {
  std::string workload;
  std::vector<RankEntry> entries;
  std::vector<std::string> ordering;  // fastest first
};

inline double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

inline double median_abs_deviation(const std::vector<double>& v) {
  double m = median(v);
  std::vector<double> dev;
  for (double x : v) dev.push_back(std::abs(x - m));
  return median(dev);
}

struct RankTarget {
  std::string variant;
  std::optional<std::filesystem::path> binary;  // empty if the build failed
  std::string build_log;
};

// Runs every variant on every size: one discarded warmup, then
// `repetitions` timed runs. Variants run one after another. Ordering is by
// median at the largest size, ties broken by name; failed variants are
// flagged and left out of the ordering.
inline RankingReport rank(const std::vector<RankTarget>& targets, const BenchmarkDescriptor& bench,
                          Executor& exec, Clock& clock) {
  bench.validate();
  RankingReport report;
  report.workload = bench.workload;
  for (const auto& t : targets) {
    RankEntry e{t.variant, {}, false, {}};
    if (!t.binary) {
      e.failed = true;
      e.failure = "build failed: " + t.build_log;
      report.entries.push_back(std::move(e));
      continue;
    }
    for (long size : bench.sizes) {
      SizeTiming st{size, {}, 0, 0};
      auto args = bench.program_args(size);
      for (int rep = 0; rep <= bench.repetitions && !e.failed; ++rep) {
        double start = clock.now();
        int status = exec.run(*t.binary, args, nullptr);
        double elapsed = clock.now() - start;
        if (status != 0) {
          e.failed = true;
          e.failure = "run failed with status " + std::to_string(status) + " at size " + std::to_string(size);
        } else if (rep > 0) {
          st.samples.push_back(elapsed);
        }
      }
      st.median = median(st.samples);
      st.mad = median_abs_deviation(st.samples);
      e.timings.push_back(std::move(st));
      if (e.failed) break;
    }
    report.entries.push_back(std::move(e));
  }
  std::vector<const RankEntry*> ok;
  for (const auto& e : report.entries) {
    if (!e.failed) ok.push_back(&e);
  }
  std::sort(ok.begin(), ok.end(), [](const RankEntry* a, const RankEntry* b) {
    double ma = a->timings.back().median, mb = b->timings.back().median;
    if (ma != mb) return ma < mb;
    return a->variant < b->variant;
  });
  for (const auto* e : ok) report.ordering.push_back(e->variant);
  return report;
}

inline nlohmann::json to_json(const RankingReport& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.entries) {
    nlohmann::json timings = nlohmann::json::array();
    for (const auto& t : e.timings) {
      timings.push_back({{"size", t.size}, {"samples_secs", t.samples}, {"median_secs", t.median},
                         {"mad_secs", t.mad}});
    }
    nlohmann::json j{{"variant", e.variant}, {"timings", timings}, {"failed", e.failed},
                     {"memory", nullptr}};
    if (e.failed) j["failure"] = e.failure;
    entries.push_back(std::move(j));
  }
  return {{"workload", r.workload}, {"ordering", r.ordering}, {"entries", entries}};
}

}  // namespace cselect
