#pragma once

#include <algorithm>
#include <optional>
#include <utility>

#include "cselect/value.hpp"

// Model operations over the abstract list model. Each is total and
// deterministic; observers return the input list unchanged alongside their
// result.
namespace cselect::model {

inline ModelList sort_ascending(ModelList xs) {
  std::sort(xs.begin(), xs.end());
  return xs;
}

inline ModelList dedup_adjacent(ModelList xs) {
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

inline bool member(const ModelList& xs, int x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

inline ModelList remove_first(ModelList xs, int x) {
  auto it = std::find(xs.begin(), xs.end(), x);
  if (it != xs.end()) xs.erase(it);
  return xs;
}

// Clamps n to [0, |xs|].
inline ModelList take(const ModelList& xs, int n) {
  n = std::clamp(n, 0, static_cast<int>(xs.size()));
  return ModelList(xs.begin(), xs.begin() + n);
}

inline ModelList insert_seq(ModelList xs, int x) {
  xs.push_back(x);
  return xs;
}

inline ModelList insert_sorted_unique(ModelList xs, int x) {
  xs.push_back(x);
  return dedup_adjacent(sort_ascending(std::move(xs)));
}

// Sorted insertion keeping duplicates.
inline ModelList insert_sorted(ModelList xs, int x) {
  xs.push_back(x);
  return sort_ascending(std::move(xs));
}

// Appends x unless already present.
inline ModelList insert_unique(ModelList xs, int x) {
  if (!member(xs, x)) xs.push_back(x);
  return xs;
}

inline std::pair<ModelList, bool> contains(const ModelList& xs, int x) { return {xs, member(xs, x)}; }

inline std::pair<ModelList, std::optional<int>> remove(const ModelList& xs, int x) {
  if (member(xs, x)) return {remove_first(xs, x), x};
  return {xs, std::nullopt};
}

inline std::pair<ModelList, std::optional<int>> first(const ModelList& xs) {
  if (xs.empty()) return {xs, std::nullopt};
  return {xs, xs.front()};
}

inline std::pair<ModelList, std::optional<int>> last(const ModelList& xs) {
  if (xs.empty()) return {xs, std::nullopt};
  return {xs, xs.back()};
}

inline std::pair<ModelList, std::optional<int>> nth(const ModelList& xs, int n) {
  if (n < 0 || n >= static_cast<int>(xs.size())) return {xs, std::nullopt};
  return {xs, xs[n]};
}

inline std::pair<ModelList, int> len(const ModelList& xs) { return {xs, static_cast<int>(xs.size())}; }

inline std::pair<ModelList, bool> is_empty(const ModelList& xs) { return {xs, xs.empty()}; }

inline ModelList clear(const ModelList&) { return {}; }

inline ModelList push_lifo(ModelList xs, int x) {
  xs.push_back(x);
  return xs;
}

inline ModelList push_fifo(const ModelList& xs, int x) {
  ModelList out{x};
  out.insert(out.end(), xs.begin(), xs.end());
  return out;
}

// Removes and returns the last element.
inline std::pair<ModelList, std::optional<int>> pop(const ModelList& xs) {
  if (xs.empty()) return {xs, std::nullopt};
  return {take(xs, static_cast<int>(xs.size()) - 1), xs.back()};
}

}  // namespace cselect::model
