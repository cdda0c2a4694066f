#include "ptrs/families.hpp"

#include <cctype>

#include "ptrs/error.hpp"

namespace ptrs {

std::string to_string(const FamilyObject& o) {
  if (o.is_number()) return std::to_string(o.index);
  if (o.index < 0) return o.name;
  return o.name + "_" + std::to_string(o.index);
}

std::ostream& operator<<(std::ostream& os, const FamilyObject& o) { return os << to_string(o); }

FamilyObject parse_family_object(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::Syntax, "empty object");
  auto all_digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  if (all_digits(text)) return FamilyObject::number(std::stoll(std::string(text)));
  std::size_t split = text.size();
  while (split > 0 && std::isdigit(static_cast<unsigned char>(text[split - 1]))) --split;
  if (split == text.size()) return FamilyObject::named(std::string(text));
  std::string_view head = text.substr(0, split);
  std::int64_t index = std::stoll(std::string(text.substr(split)));
  if (!head.empty() && head.back() == '_') head.remove_suffix(1);
  if (head.empty()) throw Error(ErrorCode::Syntax, "malformed object '" + std::string(text) + "'");
  return FamilyObject::indexed(std::string(head), index);
}

namespace {

Reduct<FamilyObject> option(std::vector<FiniteDistribution<FamilyObject>::Entry> entries, std::size_t index) {
  return {FiniteDistribution<FamilyObject>::from_entries(std::move(entries)), {}, index};
}

}  // namespace

RandomWalk::RandomWalk(Rational down_probability, std::int64_t bound) : p_(std::move(down_probability)), bound_(bound) {
  if (p_ < 0 || p_ > 1) throw Error(ErrorCode::InvalidWeights, "bias " + to_string(p_) + " is not a probability");
}

std::vector<Reduct<FamilyObject>> RandomWalk::reducts(const FamilyObject& o) const {
  if (!o.is_number() || o.index <= 0) return {};
  return {option({{FamilyObject::number(o.index - 1), p_}, {FamilyObject::number(o.index + 1), 1 - p_}}, 0)};
}

std::vector<Reduct<FamilyObject>> NondeterministicExample::reducts(const FamilyObject& o) const {
  const Rational half(1, 2);
  if (o == FamilyObject::named("a"))
    return {option({{FamilyObject::named("b1"), half}, {FamilyObject::named("b2"), half}}, 0)};
  if (o == FamilyObject::named("b1") || o == FamilyObject::named("b2"))
    return {option({{FamilyObject::named("c"), Rational(1)}}, 0)};
  if (o == FamilyObject::named("c"))
    return {option({{FamilyObject::named("d1"), Rational(1)}}, 0),
            option({{FamilyObject::named("d2"), Rational(1)}}, 1)};
  return {};
}

ExplodingFamily::ExplodingFamily(std::int64_t bound) : bound_(bound) {
  if (bound < 0 || bound > 56) throw Error(ErrorCode::Usage, "index bound must lie in 0..56");
}

std::vector<Reduct<FamilyObject>> ExplodingFamily::reducts(const FamilyObject& o) const {
  const Rational half(1, 2);
  if (o.is_number()) {
    if (o.index <= 0) return {};
    return {option({{FamilyObject::number(o.index - 1), Rational(1)}}, 0)};
  }
  if (o.name != "a" || o.index < 0) return {};
  const std::int64_t n = o.index;
  return {option({{FamilyObject::indexed("a", n + 1), half}, {FamilyObject::number(0), half}}, 0),
          option({{FamilyObject::number((std::int64_t{1} << n) * n), Rational(1)}}, 1)};
}

}  // namespace ptrs
