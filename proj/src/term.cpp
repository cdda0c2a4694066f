#include "ptrs/term.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "ptrs/error.hpp"

namespace ptrs {

namespace {

std::size_t combine(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::variable(std::string name) {
  const std::size_t h = combine(0x51ed27, std::hash<std::string>{}(name));
  return Term(std::make_shared<const Node>(Node{true, std::move(name), {}, 1, 1, h}));
}

Term Term::apply(std::string symbol, std::vector<Term> args) {
  std::size_t size = 1;
  std::size_t depth = 0;
  std::size_t h = combine(0xa11ce, std::hash<std::string>{}(symbol));
  for (const Term& a : args) {
    size += a.size();
    depth = std::max(depth, a.depth());
    h = combine(h, a.hash());
  }
  return Term(std::make_shared<const Node>(
      Node{false, std::move(symbol), std::move(args), size, depth + 1, h}));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  if (a.is_variable() != b.is_variable() || a.name() != b.name()) return false;
  return std::equal(a.args().begin(), a.args().end(), b.args().begin(), b.args().end());
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.is_variable() != b.is_variable())
    return a.is_variable() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.args().begin(), a.args().end(),
                                                b.args().begin(), b.args().end());
}

void Signature::declare(const std::string& symbol, std::size_t arity) {
  auto [it, inserted] = arities_.emplace(symbol, arity);
  if (!inserted && it->second != arity) {
    throw Error(ErrorCode::ArityInconsistency,
                "symbol '" + symbol + "' used with arity " + std::to_string(arity) +
                    " but previously with arity " + std::to_string(it->second));
  }
}

std::optional<std::size_t> Signature::arity(const std::string& symbol) const {
  if (auto it = arities_.find(symbol); it != arities_.end()) return it->second;
  return std::nullopt;
}

void Signature::declare_all(const Term& t) {
  if (t.is_variable()) return;
  declare(t.name(), t.arity());
  for (const Term& a : t.args()) declare_all(a);
}

Term apply_substitution(const Term& t, const Substitution& sigma) {
  if (t.is_variable()) {
    auto it = sigma.find(t.name());
    return it == sigma.end() ? t : it->second;
  }
  if (t.arity() == 0) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(apply_substitution(a, sigma));
  return Term::apply(t.name(), std::move(args));
}

const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (std::size_t index : p) {
    if (index == 0 || index > cur->arity()) {
      throw Error(ErrorCode::InvalidPosition,
                  "position " + to_string(p) + " is not valid in " + to_string(t));
    }
    cur = &cur->arg(index - 1);
  }
  return *cur;
}

namespace {

Term replace_from(const Term& t, const Position& p, std::size_t depth, const Term& s,
                  const Term& root) {
  if (depth == p.size()) return s;
  const std::size_t index = p[depth];
  if (index == 0 || index > t.arity()) {
    throw Error(ErrorCode::InvalidPosition,
                "position " + to_string(p) + " is not valid in " + to_string(root));
  }
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[index - 1] = replace_from(args[index - 1], p, depth + 1, s, root);
  return Term::apply(t.name(), std::move(args));
}

void collect_positions(const Term& t, Position& prefix, std::vector<Position>& out) {
  out.push_back(prefix);
  for (std::size_t i = 0; i < t.arity(); ++i) {
    prefix.push_back(i + 1);
    collect_positions(t.arg(i), prefix, out);
    prefix.pop_back();
  }
}

bool match_into(const Term& pattern, const Term& subject, Substitution& sigma) {
  if (pattern.is_variable()) {
    auto [it, inserted] = sigma.emplace(pattern.name(), subject);
    return inserted || it->second == subject;
  }
  if (subject.is_variable() || pattern.name() != subject.name() ||
      pattern.arity() != subject.arity()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    if (!match_into(pattern.arg(i), subject.arg(i), sigma)) return false;
  }
  return true;
}

void collect_variables(const Term& t, std::set<std::string>& out) {
  if (t.is_variable()) {
    out.insert(t.name());
    return;
  }
  for (const Term& a : t.args()) collect_variables(a, out);
}

void print(std::ostream& os, const Term& t) {
  os << t.name();
  if (t.is_variable() || t.arity() == 0) return;
  os << '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) os << ',';
    print(os, t.arg(i));
  }
  os << ')';
}

}  // namespace

Term replace_at(const Term& t, const Position& p, const Term& replacement) {
  return replace_from(t, p, 0, replacement, t);
}

std::vector<Position> subterm_positions(const Term& t) {
  std::vector<Position> out;
  out.reserve(t.size());
  Position prefix;
  collect_positions(t, prefix, out);
  return out;
}

std::optional<Substitution> match(const Term& pattern, const Term& subject) {
  Substitution sigma;
  if (!match_into(pattern, subject, sigma)) return std::nullopt;
  return sigma;
}

std::set<std::string> variables(const Term& t) {
  std::set<std::string> out;
  collect_variables(t, out);
  return out;
}

bool is_ground(const Term& t) {
  if (t.is_variable()) return false;
  return std::all_of(t.args().begin(), t.args().end(), [](const Term& a) { return is_ground(a); });
}

std::string to_string(const Term& t) {
  std::ostringstream os;
  print(os, t);
  return os.str();
}

std::string to_string(const Position& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(p[i]);
  }
  return out + "]";
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
  print(os, t);
  return os;
}

}  // namespace ptrs
