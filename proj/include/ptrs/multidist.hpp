#pragma once

#include <algorithm>
#include <functional>
#include <initializer_list>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ptrs/error.hpp"
#include "ptrs/rational.hpp"

namespace ptrs {

/// Default object printer: stream insertion.
struct StreamPrinter {
  template <class T>
  std::string operator()(const T& value) const {
    std::ostringstream os;
    os << value;
    return os.str();
  }
};

/// Finite probability distribution. Support entries are unique with
/// strictly positive probabilities summing to exactly one; insertion order
/// is kept for rendering.
template <class T>
class FiniteDistribution {
 public:
  using Entry = std::pair<T, Rational>;

  FiniteDistribution() = default;

  /// Validates the distribution invariants; equal objects are merged by
  /// summing and zero entries are dropped.
  static FiniteDistribution from_entries(std::vector<Entry> entries) {
    FiniteDistribution d;
    Rational total = 0;
    for (auto& [object, p] : entries) {
      if (p < 0) throw Error(ErrorCode::InvalidWeights, "negative probability " + ptrs::to_string(p));
      total += p;
      if (p == 0) continue;
      auto it = std::find_if(d.entries_.begin(), d.entries_.end(),
                             [&](const Entry& e) { return e.first == object; });
      if (it == d.entries_.end()) {
        d.entries_.emplace_back(std::move(object), p);
      } else {
        it->second += p;
      }
    }
    if (total != 1)
      throw Error(ErrorCode::InvalidWeights, "probabilities sum to " + ptrs::to_string(total) + ", not 1");
    return d;
  }

  static FiniteDistribution point(T object) { return from_entries({{std::move(object), Rational(1)}}); }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  Rational probability(const T& object) const {
    for (const auto& [o, p] : entries_)
      if (o == object) return p;
    return 0;
  }

  bool is_point_mass() const { return entries_.size() == 1; }

  /// Equal as functions T -> [0,1]; order-insensitive.
  friend bool operator==(const FiniteDistribution& a, const FiniteDistribution& b) {
    if (a.size() != b.size()) return false;
    return std::all_of(a.entries_.begin(), a.entries_.end(),
                       [&](const Entry& e) { return b.probability(e.first) == e.second; });
  }

  template <class Printer = StreamPrinter>
  std::string to_string(Printer print = {}) const {
    std::string out = "{";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) out += ", ";
      out += ptrs::to_string(entries_[i].second) + ": " + print(entries_[i].first);
    }
    return out + "}";
  }

 private:
  std::vector<Entry> entries_;
};

/// Finite multiset of (probability, object) pairs with total mass <= 1.
/// Equal objects are never merged.
template <class T>
class MultiDistribution {
 public:
  struct Entry {
    Rational probability;
    T object;
  };

  MultiDistribution() = default;
  MultiDistribution(std::initializer_list<std::pair<Rational, T>> entries) {
    for (const auto& [p, o] : entries) add(p, o);
    check_mass();
  }

  static MultiDistribution point(T object) {
    MultiDistribution m;
    m.add(Rational(1), std::move(object));
    return m;
  }

  static MultiDistribution from(const FiniteDistribution<T>& d) {
    MultiDistribution m;
    for (const auto& [o, p] : d) m.add(p, o);
    return m;
  }

  /// Zero-probability entries are dropped; negative ones are rejected.
  void add(Rational probability, T object) {
    if (probability < 0)
      throw Error(ErrorCode::InvalidWeights, "negative probability " + ptrs::to_string(probability));
    if (probability == 0) return;
    entries_.push_back({std::move(probability), std::move(object)});
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// Entries sorted by (object, probability); the canonical form used for
  /// multiset equality.
  std::vector<Entry> sorted_entries() const {
    std::vector<Entry> out = entries_;
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
      if (a.object < b.object) return true;
      if (b.object < a.object) return false;
      return a.probability < b.probability;
    });
    return out;
  }

  friend bool operator==(const MultiDistribution& a, const MultiDistribution& b) {
    if (a.size() != b.size()) return false;
    auto sa = a.sorted_entries();
    auto sb = b.sorted_entries();
    for (std::size_t i = 0; i < sa.size(); ++i) {
      if (sa[i].probability != sb[i].probability || !(sa[i].object == sb[i].object)) return false;
    }
    return true;
  }

  /// Strict weak order on canonical forms, for sets of multidistributions.
  friend bool operator<(const MultiDistribution& a, const MultiDistribution& b) {
    auto sa = a.sorted_entries();
    auto sb = b.sorted_entries();
    return std::lexicographical_compare(
        sa.begin(), sa.end(), sb.begin(), sb.end(), [](const Entry& x, const Entry& y) {
          if (x.object < y.object) return true;
          if (y.object < x.object) return false;
          return x.probability < y.probability;
        });
  }

  template <class Printer = StreamPrinter>
  std::string to_string(Printer print = {}) const {
    std::string out = "{";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) out += ", ";
      out += ptrs::to_string(entries_[i].probability) + ": " + print(entries_[i].object);
    }
    return out + "}";
  }

 private:
  void check_mass() const {
    Rational total = 0;
    for (const auto& e : entries_) total += e.probability;
    if (total > 1) throw Error(ErrorCode::InvalidWeights, "mass " + ptrs::to_string(total) + " exceeds 1");
  }

  std::vector<Entry> entries_;
};

template <class T>
Rational mass(const MultiDistribution<T>& mu) {
  Rational total = 0;
  for (const auto& e : mu) total += e.probability;
  return total;
}

/// Multiset union of p_i * mu_i. Requires p_i >= 0 and sum p_i <= 1.
template <class T>
MultiDistribution<T> convex_union(const std::vector<std::pair<Rational, MultiDistribution<T>>>& parts) {
  Rational total = 0;
  for (const auto& [p, mu] : parts) {
    if (p < 0) throw Error(ErrorCode::InvalidWeights, "negative weight " + to_string(p));
    total += p;
  }
  if (total > 1) throw Error(ErrorCode::InvalidWeights, "weights sum to " + to_string(total) + " > 1");
  MultiDistribution<T> out;
  for (const auto& [p, mu] : parts) {
    for (const auto& e : mu) out.add(p * e.probability, e.object);
  }
  return out;
}

template <class T>
std::map<T, Rational> collapse(const MultiDistribution<T>& mu) {
  std::map<T, Rational> out;
  for (const auto& e : mu) out[e.object] += e.probability;
  return out;
}

/// Multidistribution with one entry per distinct object.
template <class T>
MultiDistribution<T> collapsed(const MultiDistribution<T>& mu) {
  MultiDistribution<T> out;
  for (auto& [object, p] : collapse(mu)) out.add(p, object);
  return out;
}

inline Rational expectation(const MultiDistribution<Rational>& mu) {
  Rational total = 0;
  for (const auto& e : mu) total += e.probability * e.object;
  return total;
}

template <class T, class F>
auto map_multidist(const MultiDistribution<T>& mu, F f) {
  using U = std::decay_t<std::invoke_result_t<F, const T&>>;
  MultiDistribution<U> out;
  for (const auto& e : mu) out.add(e.probability, f(e.object));
  return out;
}

}  // namespace ptrs
