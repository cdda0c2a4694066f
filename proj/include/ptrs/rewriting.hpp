#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ptrs/multidist.hpp"
#include "ptrs/term.hpp"

namespace ptrs {

/// l -> d with l not a variable and vars(supp d) within vars(l).
struct ProbRule {
  Term lhs;
  FiniteDistribution<Term> rhs;
};

/// Smallest integer weights realizing the rule's probabilities: returns
/// (w, [w_1..w_n]) with p_j = w_j / w, in right-hand-side order.
std::pair<Integer, std::vector<Integer>> integer_weights(const ProbRule& rule);

/// `l -> w1 : r1 || ... || wn : rn` using integer_weights, or `l -> r` for a
/// point mass.
std::string to_string(const ProbRule& rule);

class Ptrs {
 public:
  Ptrs() = default;
  /// Validates rule hygiene and infers the signature.
  explicit Ptrs(std::vector<ProbRule> rules);

  const Signature& signature() const { return signature_; }
  const std::vector<ProbRule>& rules() const { return rules_; }

 private:
  Signature signature_;
  std::vector<ProbRule> rules_;
};

struct RedexStep {
  Position position;
  std::size_t rule = 0;
  Substitution substitution;
  FiniteDistribution<Term> result;
};

/// All (position, rule) pairs whose left-hand side matches, positions in
/// pre-order then rule order. Each result is C[ collapse(d sigma) ].
std::vector<RedexStep> enumerate_redexes(const Ptrs& system, const Term& t);

/// The distribution C[ collapse(d sigma) ] for one redex.
FiniteDistribution<Term> contract(const ProbRule& rule, const Term& t, const Position& p,
                                  const Substitution& sigma);

/// One nondeterministic option of a PARS object. For term systems
/// `position` and `rule` identify the redex; abstract systems leave the
/// position empty and use `rule` as the option index.
template <class Obj>
struct Reduct {
  FiniteDistribution<Obj> distribution;
  Position position;
  std::size_t rule = 0;
};

enum class Strategy { LeftmostInnermost, LeftmostOutermost };

/// Index of the strategy's pick among `positions` (given in pre-order), or
/// nullopt when the list is empty.
std::optional<std::size_t> select_by_strategy(const std::vector<Position>& positions, Strategy s);

/// Probabilistic abstract reduction system: each object has a finite,
/// deterministically ordered list of reduct distributions; an empty list
/// means the object is terminal.
template <class Obj>
class Pars {
 public:
  virtual ~Pars() = default;

  virtual std::vector<Reduct<Obj>> reducts(const Obj& object) const = 0;

  /// The reduct a positional strategy picks. Implementations may override
  /// this to avoid building every reduct.
  virtual std::optional<Reduct<Obj>> strategy_reduct(const Obj& object, Strategy s) const {
    auto all = reducts(object);
    std::vector<Position> positions;
    positions.reserve(all.size());
    for (const auto& r : all) positions.push_back(r.position);
    auto index = select_by_strategy(positions, s);
    if (!index) return std::nullopt;
    return std::move(all[*index]);
  }

  /// Objects past the configured truncation bound are treated as terminal
  /// and reported by the simulator.
  virtual bool beyond_bound(const Obj&) const { return false; }

  virtual std::string render(const Obj& object) const { return StreamPrinter{}(object); }
};

/// Resolves nondeterminism for one multidistribution entry.
template <class Obj>
class Chooser {
 public:
  virtual ~Chooser() = default;
  virtual std::optional<Reduct<Obj>> choose(const Pars<Obj>& pars, const Obj& object) = 0;
  virtual std::string name() const = 0;
};

template <class Obj>
class StrategyChooser final : public Chooser<Obj> {
 public:
  explicit StrategyChooser(Strategy s) : strategy_(s) {}
  std::optional<Reduct<Obj>> choose(const Pars<Obj>& pars, const Obj& object) override {
    return pars.strategy_reduct(object, strategy_);
  }
  std::string name() const override {
    return strategy_ == Strategy::LeftmostInnermost ? "innermost" : "outermost";
  }

 private:
  Strategy strategy_;
};

/// Uniformly random choice among all reducts, seeded for reproducibility.
template <class Obj>
class RandomChooser final : public Chooser<Obj> {
 public:
  explicit RandomChooser(std::uint64_t seed) : rng_(seed) {}
  std::optional<Reduct<Obj>> choose(const Pars<Obj>& pars, const Obj& object) override {
    auto all = pars.reducts(object);
    if (all.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    return std::move(all[pick(rng_)]);
  }
  std::string name() const override { return "random"; }

 private:
  std::mt19937_64 rng_;
};

struct StepStats {
  bool truncation_hit = false;
};

/// One step of the multidistribution reduction relation: terminal entries
/// vanish, every other entry (p, a) contributes p times the chosen reduct
/// distribution of a.
template <class Obj>
MultiDistribution<Obj> step_multidist(const Pars<Obj>& pars, const MultiDistribution<Obj>& mu,
                                      Chooser<Obj>& chooser, StepStats* stats = nullptr) {
  MultiDistribution<Obj> next;
  for (const auto& e : mu) {
    if (pars.beyond_bound(e.object)) {
      if (stats) stats->truncation_hit = true;
      continue;
    }
    auto chosen = chooser.choose(pars, e.object);
    if (!chosen) continue;
    for (const auto& [object, q] : chosen->distribution) next.add(e.probability * q, object);
  }
  return next;
}

/// Every one-step successor of `mu`, one per combination of per-entry
/// choices. Throws Error(NodeBudgetExceeded) when the number of
/// combinations exceeds `budget`.
template <class Obj>
std::vector<MultiDistribution<Obj>> step_all(const Pars<Obj>& pars, const MultiDistribution<Obj>& mu,
                                             std::size_t budget, StepStats* stats = nullptr) {
  std::vector<MultiDistribution<Obj>> partial{MultiDistribution<Obj>{}};
  for (const auto& e : mu) {
    if (pars.beyond_bound(e.object)) {
      if (stats) stats->truncation_hit = true;
      continue;
    }
    auto options = pars.reducts(e.object);
    if (options.empty()) continue;
    if (partial.size() * options.size() > budget) {
      throw Error(ErrorCode::NodeBudgetExceeded,
                  "exhaustive expansion exceeds node budget of " + std::to_string(budget));
    }
    std::vector<MultiDistribution<Obj>> extended;
    extended.reserve(partial.size() * options.size());
    for (const auto& base : partial) {
      for (const auto& option : options) {
        MultiDistribution<Obj> m = base;
        for (const auto& [object, q] : option.distribution) m.add(e.probability * q, object);
        extended.push_back(std::move(m));
      }
    }
    partial = std::move(extended);
  }
  return partial;
}

/// A PTRS viewed as a PARS over terms, optionally truncated at a term size.
class TermPars final : public Pars<Term> {
 public:
  explicit TermPars(const Ptrs& system, std::optional<std::size_t> max_term_size = std::nullopt)
      : system_(&system), max_term_size_(max_term_size) {}

  std::vector<Reduct<Term>> reducts(const Term& t) const override;
  std::optional<Reduct<Term>> strategy_reduct(const Term& t, Strategy s) const override;
  bool beyond_bound(const Term& t) const override {
    return max_term_size_ && t.size() > *max_term_size_;
  }
  std::string render(const Term& t) const override { return to_string(t); }

  const Ptrs& system() const { return *system_; }

 private:
  const Ptrs* system_;
  std::optional<std::size_t> max_term_size_;
};

/// Finite abstract reduction system given as an explicit edge list.
struct Ars {
  std::vector<std::string> objects;
  std::vector<std::pair<std::string, std::string>> edges;
};

struct EmbeddingVerdict {
  bool holds = true;
  std::vector<std::string> violations;
};

/// Checks, for every object a, that the one-step multidistribution reducts
/// of {1:a} under the point-mass PARS are exactly {1:b} for a -> b, or the
/// empty multidistribution when a is a normal form.
EmbeddingVerdict ars_embedding_check(const Ars& ars);

}  // namespace ptrs
