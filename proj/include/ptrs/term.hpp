#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace ptrs {

/// Immutable first-order term. Copies share structure; comparison is
/// structural (variables order before applications, then by name, then
/// argument-wise).
class Term {
 public:
  static Term variable(std::string name);
  static Term apply(std::string symbol, std::vector<Term> args = {});

  bool is_variable() const { return node_->is_variable; }
  const std::string& name() const { return node_->name; }
  std::span<const Term> args() const { return node_->args; }
  std::size_t arity() const { return node_->args.size(); }
  const Term& arg(std::size_t i) const { return node_->args[i]; }

  /// Number of nodes.
  std::size_t size() const { return node_->size; }
  std::size_t depth() const { return node_->depth; }
  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node {
    bool is_variable;
    std::string name;
    std::vector<Term> args;
    std::size_t size;
    std::size_t depth;
    std::size_t hash;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Argument indices from the root, 1-based. The empty path is the root.
using Position = std::vector<std::size_t>;

/// Finite-domain mapping; variables outside the domain map to themselves.
using Substitution = std::map<std::string, Term>;

/// Symbol name to arity.
class Signature {
 public:
  /// Records `symbol` with `arity`; throws Error(ArityInconsistency) if the
  /// symbol is already known with a different arity.
  void declare(const std::string& symbol, std::size_t arity);
  std::optional<std::size_t> arity(const std::string& symbol) const;
  bool contains(const std::string& symbol) const { return arities_.contains(symbol); }
  const std::map<std::string, std::size_t>& symbols() const { return arities_; }

  /// Declares every symbol occurring in `t`.
  void declare_all(const Term& t);

 private:
  std::map<std::string, std::size_t> arities_;
};

Term apply_substitution(const Term& t, const Substitution& sigma);

/// Throws Error(InvalidPosition) when `p` is not a position of `t`.
const Term& subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& replacement);

/// Pre-order, leftmost first; the root position comes first.
std::vector<Position> subterm_positions(const Term& t);

/// One-sided matching. Repeated pattern variables must bind equal subterms.
std::optional<Substitution> match(const Term& pattern, const Term& subject);

std::set<std::string> variables(const Term& t);
bool is_ground(const Term& t);

/// `f(t1,t2)`; constants without parentheses.
std::string to_string(const Term& t);
std::string to_string(const Position& p);
std::ostream& operator<<(std::ostream& os, const Term& t);

}  // namespace ptrs

template <>
struct std::hash<ptrs::Term> {
  std::size_t operator()(const ptrs::Term& t) const noexcept { return t.hash(); }
};
