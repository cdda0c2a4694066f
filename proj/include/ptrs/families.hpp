#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "ptrs/rewriting.hpp"

namespace ptrs {

/// Object of a built-in abstract family: a natural number (`name` empty),
/// a plain name (`index` < 0), or an indexed name printed `name_index`.
struct FamilyObject {
  std::string name;
  std::int64_t index = -1;

  static FamilyObject number(std::int64_t n) { return {"", n}; }
  static FamilyObject named(std::string n) { return {std::move(n), -1}; }
  static FamilyObject indexed(std::string n, std::int64_t i) { return {std::move(n), i}; }

  bool is_number() const { return name.empty(); }

  friend bool operator==(const FamilyObject&, const FamilyObject&) = default;
  friend auto operator<=>(const FamilyObject&, const FamilyObject&) = default;
};

std::string to_string(const FamilyObject& o);
std::ostream& operator<<(std::ostream& os, const FamilyObject& o);

/// `12` -> number, `a` -> named, `a_3` / `a3` -> indexed.
FamilyObject parse_family_object(std::string_view text);

/// Biased random walk over the naturals: n+1 -> {p: n, 1-p: n+2}; 0 is
/// terminal. Numbers above `bound` are truncated.
class RandomWalk final : public Pars<FamilyObject> {
 public:
  RandomWalk(Rational down_probability, std::int64_t bound);
  std::vector<Reduct<FamilyObject>> reducts(const FamilyObject& o) const override;
  bool beyond_bound(const FamilyObject& o) const override { return o.index > bound_; }
  std::string render(const FamilyObject& o) const override { return to_string(o); }

 private:
  Rational p_;
  std::int64_t bound_;
};

/// a -> {1/2: b1, 1/2: b2}, b1 -> {1: c}, b2 -> {1: c}, c -> {1: d1}, c -> {1: d2}.
class NondeterministicExample final : public Pars<FamilyObject> {
 public:
  std::vector<Reduct<FamilyObject>> reducts(const FamilyObject& o) const override;
  std::string render(const FamilyObject& o) const override { return to_string(o); }
};

/// a_n -> {1/2: a_{n+1}, 1/2: 0}, a_n -> {1: 2^n * n}, n+1 -> {1: n}.
/// Finitely branching and positively almost-surely terminating, yet with
/// unbounded expected derivation height. Indices above `bound` are
/// truncated.
class ExplodingFamily final : public Pars<FamilyObject> {
 public:
  explicit ExplodingFamily(std::int64_t bound);
  std::vector<Reduct<FamilyObject>> reducts(const FamilyObject& o) const override;
  bool beyond_bound(const FamilyObject& o) const override { return !o.is_number() && o.index > bound_; }
  std::string render(const FamilyObject& o) const override { return to_string(o); }

 private:
  std::int64_t bound_;
};

}  // namespace ptrs
