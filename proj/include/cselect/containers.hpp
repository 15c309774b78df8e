#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <deque>
#include <functional>
#include <list>
#include <optional>
#include <set>
#include <unordered_set>
#include <vector>

// Executable catalogue. Every container is default constructible and
// provides `to_model()`, its abstraction to the list model.
namespace cselect {

template <class T>
concept Element = std::totally_ordered<T> && std::copyable<T> && requires(const T& x) {
  { std::hash<T>{}(x) } -> std::convertible_to<std::size_t>;
};

template <class C>
concept ContainerT = requires(C& c, const C& cc, const typename C::value_type& x) {
  { cc.len() } -> std::convertible_to<std::size_t>;
  { cc.contains(x) } -> std::same_as<bool>;
  { cc.is_empty() } -> std::same_as<bool>;
  c.insert(x);
  c.clear();
  { c.remove(x) } -> std::same_as<std::optional<typename C::value_type>>;
};

template <class C>
concept IndexableT = requires(const C& cc, std::size_t n) {
  { cc.first() } -> std::same_as<std::optional<typename C::value_type>>;
  { cc.last() } -> std::same_as<std::optional<typename C::value_type>>;
  { cc.nth(n) } -> std::same_as<std::optional<typename C::value_type>>;
};

template <class C>
concept StackT = requires(C& c, const typename C::value_type& x) {
  c.push(x);
  { c.pop() } -> std::same_as<std::optional<typename C::value_type>>;
};

template <class C>
auto abstraction(const C& c) -> decltype(c.to_model()) {
  return c.to_model();
}

namespace detail {

template <class Seq, class T>
std::optional<T> erase_first(Seq& s, const T& x) {
  auto it = std::find(s.begin(), s.end(), x);
  if (it == s.end()) return std::nullopt;
  s.erase(it);
  return x;
}

template <class Seq>
auto at_index(const Seq& s, std::size_t n) -> std::optional<typename Seq::value_type> {
  if (n >= s.size()) return std::nullopt;
  return *std::next(s.begin(), static_cast<std::ptrdiff_t>(n));
}

template <class Seq>
auto front_of(const Seq& s) -> std::optional<typename Seq::value_type> {
  if (s.empty()) return std::nullopt;
  return *s.begin();
}

template <class Seq>
auto back_of(const Seq& s) -> std::optional<typename Seq::value_type> {
  if (s.empty()) return std::nullopt;
  return *std::prev(s.end());
}

// Shared body of the sequence-backed containers. `Derived::normalize()` is
// called before every observation.
template <class Derived, class Seq>
class SeqBase {
 public:
  using value_type = typename Seq::value_type;

  std::size_t len() const {
    self().normalize();
    return items_.size();
  }
  bool is_empty() const { return items_.empty(); }
  bool contains(const value_type& x) const {
    return std::find(items_.begin(), items_.end(), x) != items_.end();
  }
  void clear() { items_.clear(); }
  std::optional<value_type> remove(const value_type& x) {
    self().normalize();
    return erase_first(items_, x);
  }
  std::optional<value_type> first() const {
    self().normalize();
    return front_of(items_);
  }
  std::optional<value_type> last() const {
    self().normalize();
    return back_of(items_);
  }
  std::optional<value_type> nth(std::size_t n) const {
    self().normalize();
    return at_index(items_, n);
  }
  std::vector<value_type> to_model() const {
    self().normalize();
    return {items_.begin(), items_.end()};
  }

 protected:
  void normalize() const {}
  const Derived& self() const { return static_cast<const Derived&>(*this); }
  mutable Seq items_;
};

}  // namespace detail

template <Element T>
class Vec : public detail::SeqBase<Vec<T>, std::vector<T>> {
 public:
  void insert(const T& x) { this->items_.push_back(x); }
};

template <Element T>
class LinkedList : public detail::SeqBase<LinkedList<T>, std::list<T>> {
 public:
  void insert(const T& x) { this->items_.push_back(x); }
};

// Kept sorted on insert; duplicates allowed.
template <Element T>
class SortedVec : public detail::SeqBase<SortedVec<T>, std::vector<T>> {
 public:
  void insert(const T& x) {
    auto& v = this->items_;
    v.insert(std::upper_bound(v.begin(), v.end(), x), x);
  }
};

// Appends on insert and sorts on the next observation.
template <Element T>
class LazySortedVec : public detail::SeqBase<LazySortedVec<T>, std::vector<T>> {
  friend class detail::SeqBase<LazySortedVec<T>, std::vector<T>>;

 public:
  void insert(const T& x) {
    this->items_.push_back(x);
    dirty_ = true;
  }
  void clear() {
    this->items_.clear();
    dirty_ = false;
  }

 private:
  void normalize() const {
    if (!dirty_) return;
    std::sort(this->items_.begin(), this->items_.end());
    dirty_ = false;
  }
  mutable bool dirty_ = false;
};

// Rejects duplicates on insert; insertion order is kept.
template <Element T>
class UniqueVec : public detail::SeqBase<UniqueVec<T>, std::vector<T>> {
 public:
  void insert(const T& x) {
    if (!this->contains(x)) this->items_.push_back(x);
  }
};

// Appends on insert and drops later duplicates on the next observation,
// keeping first occurrences in insertion order.
template <Element T>
class LazyUniqueVec : public detail::SeqBase<LazyUniqueVec<T>, std::vector<T>> {
  friend class detail::SeqBase<LazyUniqueVec<T>, std::vector<T>>;

 public:
  void insert(const T& x) {
    this->items_.push_back(x);
    dirty_ = true;
  }
  void clear() {
    this->items_.clear();
    dirty_ = false;
  }

 private:
  void normalize() const {
    if (!dirty_) return;
    std::unordered_set<T> seen;
    auto& v = this->items_;
    v.erase(std::remove_if(v.begin(), v.end(), [&](const T& x) { return !seen.insert(x).second; }),
            v.end());
    dirty_ = false;
  }
  mutable bool dirty_ = false;
};

template <Element T>
class HashSet {
 public:
  using value_type = T;

  std::size_t len() const { return items_.size(); }
  bool is_empty() const { return items_.empty(); }
  bool contains(const T& x) const { return items_.count(x) != 0; }
  void insert(const T& x) { items_.insert(x); }
  void clear() { items_.clear(); }
  std::optional<T> remove(const T& x) {
    if (items_.erase(x) == 0) return std::nullopt;
    return x;
  }
  // Collects the elements and sorts them.
  std::vector<T> to_model() const {
    std::vector<T> out(items_.begin(), items_.end());
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::unordered_set<T> items_;
};

template <Element T>
class BTreeSet {
 public:
  using value_type = T;

  std::size_t len() const { return items_.size(); }
  bool is_empty() const { return items_.empty(); }
  bool contains(const T& x) const { return items_.count(x) != 0; }
  void insert(const T& x) { items_.insert(x); }
  void clear() { items_.clear(); }
  std::optional<T> remove(const T& x) {
    if (items_.erase(x) == 0) return std::nullopt;
    return x;
  }
  std::optional<T> first() const { return detail::front_of(items_); }
  std::optional<T> last() const { return detail::back_of(items_); }
  std::optional<T> nth(std::size_t n) const { return detail::at_index(items_, n); }
  std::vector<T> to_model() const { return {items_.begin(), items_.end()}; }

 private:
  std::set<T> items_;
};

// Model order is bottom to top.
template <Element T>
class Stack {
 public:
  using value_type = T;

  std::size_t len() const { return items_.size(); }
  bool is_empty() const { return items_.empty(); }
  bool contains(const T& x) const { return std::find(items_.begin(), items_.end(), x) != items_.end(); }
  void insert(const T& x) { push(x); }
  void clear() { items_.clear(); }
  std::optional<T> remove(const T& x) { return detail::erase_first(items_, x); }
  void push(const T& x) { items_.push_back(x); }
  std::optional<T> pop() {
    if (items_.empty()) return std::nullopt;
    T x = items_.back();
    items_.pop_back();
    return x;
  }
  std::vector<T> to_model() const { return items_; }

 private:
  std::vector<T> items_;
};

// Model order is newest to oldest: push adds at the front, pop takes from
// the back.
template <Element T>
class Queue {
 public:
  using value_type = T;

  std::size_t len() const { return items_.size(); }
  bool is_empty() const { return items_.empty(); }
  bool contains(const T& x) const { return std::find(items_.begin(), items_.end(), x) != items_.end(); }
  void insert(const T& x) { push(x); }
  void clear() { items_.clear(); }
  std::optional<T> remove(const T& x) { return detail::erase_first(items_, x); }
  void push(const T& x) { items_.push_front(x); }
  std::optional<T> pop() {
    if (items_.empty()) return std::nullopt;
    T x = items_.back();
    items_.pop_back();
    return x;
  }
  std::vector<T> to_model() const { return {items_.begin(), items_.end()}; }

 private:
  std::deque<T> items_;
};

}  // namespace cselect
