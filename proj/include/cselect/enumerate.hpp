#pragma once

#include <cstdint>

#include "cselect/value.hpp"

namespace cselect {

// Visits every list of length 0..k over {0..m-1}: shorter lists first, then
// lexicographically. Returns false as soon as `f` does.
template <class F>
bool for_each_list(int k, int m, F&& f) {
  for (int len = 0; len <= k; ++len) {
    ModelList xs(len, 0);
    for (;;) {
      if (!f(static_cast<const ModelList&>(xs))) return false;
      int i = len - 1;
      while (i >= 0 && xs[i] == m - 1) xs[i--] = 0;
      if (i < 0) break;
      ++xs[i];
    }
    if (m <= 0) break;
  }
  return true;
}

// Number of lists visited by for_each_list(k, m).
inline std::uint64_t list_space_size(int k, int m) {
  std::uint64_t total = 0, p = 1;
  for (int len = 0; len <= k; ++len) {
    total += p;
    p *= static_cast<std::uint64_t>(m);
  }
  return total;
}

}  // namespace cselect
