#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Benchmark knobs passed to generated programs on the command line:
//
//   --size N --range R --dup-rate D --seed S
//   --insert I --contains C --remove X --access A --print
//
// The counts give how many passes over the input each phase makes.
namespace cselect {

struct Workload {
  long size = 1000;
  int range = 1000;
  double dup_rate = 0.0;
  std::uint64_t seed = 1;
  int insert = 1;
  int contains = 0;
  int remove = 0;
  int access = 0;
  bool print = false;
};

inline Workload parse_workload(int argc, char** argv) {
  Workload w;
  for (int i = 1; i < argc; ++i) {
    std::string_view a = argv[i];
    if (a == "--print") {
      w.print = true;
      continue;
    }
    if (i + 1 >= argc) throw std::invalid_argument("missing value for " + std::string(a));
    const char* v = argv[++i];
    if (a == "--size") {
      w.size = std::stol(v);
    } else if (a == "--range") {
      w.range = std::stoi(v);
    } else if (a == "--dup-rate") {
      w.dup_rate = std::stod(v);
    } else if (a == "--seed") {
      w.seed = std::stoull(v);
    } else if (a == "--insert") {
      w.insert = std::stoi(v);
    } else if (a == "--contains") {
      w.contains = std::stoi(v);
    } else if (a == "--remove") {
      w.remove = std::stoi(v);
    } else if (a == "--access") {
      w.access = std::stoi(v);
    } else {
      throw std::invalid_argument("unknown option " + std::string(a));
    }
  }
  if (w.size < 0 || w.range <= 0) throw std::invalid_argument("size and range must be positive");
  return w;
}

// `size` values in [0, range); with probability dup_rate a value repeats
// an earlier one.
inline std::vector<int> workload_input(const Workload& w) {
  std::mt19937_64 rng(w.seed);
  std::uniform_int_distribution<int> value(0, w.range - 1);
  std::bernoulli_distribution dup(w.dup_rate);
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(w.size));
  for (long i = 0; i < w.size; ++i) {
    if (!out.empty() && dup(rng)) {
      std::uniform_int_distribution<std::size_t> pick(0, out.size() - 1);
      out.push_back(out[pick(rng)]);
    } else {
      out.push_back(value(rng));
    }
  }
  return out;
}

}  // namespace cselect
