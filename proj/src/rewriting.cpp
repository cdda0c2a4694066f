#include "ptrs/rewriting.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ptrs/error.hpp"

namespace ptrs {

namespace {

Integer lcm(const Integer& a, const Integer& b) { return a / boost::multiprecision::gcd(a, b) * b; }

bool is_proper_prefix(const Position& prefix, const Position& p) {
  return prefix.size() < p.size() && std::equal(prefix.begin(), prefix.end(), p.begin());
}

}  // namespace

std::pair<Integer, std::vector<Integer>> integer_weights(const ProbRule& rule) {
  Integer common = 1;
  for (const auto& [term, p] : rule.rhs) common = lcm(common, denominator(p));
  std::vector<Integer> weights;
  Integer g = 0;
  for (const auto& [term, p] : rule.rhs) {
    Rational scaled = p * common;
    weights.push_back(numerator(scaled));
    g = boost::multiprecision::gcd(g, weights.back());
  }
  if (g > 1) {
    for (auto& w : weights) w /= g;
    common /= g;
  }
  return {common, weights};
}

std::string to_string(const ProbRule& rule) {
  std::string out = to_string(rule.lhs) + " -> ";
  if (rule.rhs.is_point_mass()) return out + to_string(rule.rhs.entries().front().first);
  auto [total, weights] = integer_weights(rule);
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (j) out += " || ";
    out += to_string(weights[j]) + " : " + to_string(rule.rhs.entries()[j].first);
  }
  return out;
}

Ptrs::Ptrs(std::vector<ProbRule> rules) : rules_(std::move(rules)) {
  for (const ProbRule& rule : rules_) {
    if (rule.lhs.is_variable())
      throw Error(ErrorCode::VariableLhs, "left-hand side '" + to_string(rule.lhs) + "' is a variable");
    if (rule.rhs.size() == 0)
      throw Error(ErrorCode::EmptyRule, "rule for '" + to_string(rule.lhs) + "' has no alternatives");
    const auto lhs_vars = variables(rule.lhs);
    signature_.declare_all(rule.lhs);
    for (const auto& [r, p] : rule.rhs) {
      for (const auto& x : variables(r)) {
        if (!lhs_vars.contains(x)) {
          throw Error(ErrorCode::FreeVariableOnRhs, "variable '" + x + "' of '" + to_string(r) +
                                                        "' does not occur in '" + to_string(rule.lhs) + "'");
        }
      }
      signature_.declare_all(r);
    }
  }
}

FiniteDistribution<Term> contract(const ProbRule& rule, const Term& t, const Position& p,
                                  const Substitution& sigma) {
  std::vector<FiniteDistribution<Term>::Entry> entries;
  entries.reserve(rule.rhs.size());
  for (const auto& [r, q] : rule.rhs) entries.emplace_back(replace_at(t, p, apply_substitution(r, sigma)), q);
  return FiniteDistribution<Term>::from_entries(std::move(entries));
}

std::vector<RedexStep> enumerate_redexes(const Ptrs& system, const Term& t) {
  std::vector<RedexStep> out;
  for (const Position& p : subterm_positions(t)) {
    const Term& sub = subterm_at(t, p);
    if (sub.is_variable()) continue;
    for (std::size_t i = 0; i < system.rules().size(); ++i) {
      const ProbRule& rule = system.rules()[i];
      if (auto sigma = match(rule.lhs, sub)) {
        out.push_back(RedexStep{p, i, *sigma, contract(rule, t, p, *sigma)});
      }
    }
  }
  return out;
}

std::optional<std::size_t> select_by_strategy(const std::vector<Position>& positions, Strategy s) {
  if (positions.empty()) return std::nullopt;
  if (s == Strategy::LeftmostOutermost) return 0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const bool innermost = std::none_of(positions.begin(), positions.end(), [&](const Position& q) {
      return is_proper_prefix(positions[i], q);
    });
    if (innermost) return i;
  }
  return std::nullopt;
}

std::vector<Reduct<Term>> TermPars::reducts(const Term& t) const {
  std::vector<Reduct<Term>> out;
  for (auto& step : enumerate_redexes(*system_, t)) {
    out.push_back(Reduct<Term>{std::move(step.result), std::move(step.position), step.rule});
  }
  return out;
}

namespace {

std::optional<std::pair<Position, std::size_t>> first_rule_at(const Ptrs& system, const Term& sub,
                                                              const Position& p, Substitution& sigma) {
  if (sub.is_variable()) return std::nullopt;
  for (std::size_t i = 0; i < system.rules().size(); ++i) {
    if (auto m = match(system.rules()[i].lhs, sub)) {
      sigma = std::move(*m);
      return std::make_pair(p, i);
    }
  }
  return std::nullopt;
}

std::optional<std::pair<Position, std::size_t>> find_outermost(const Ptrs& system, const Term& sub,
                                                               Position& p, Substitution& sigma) {
  if (auto hit = first_rule_at(system, sub, p, sigma)) return hit;
  for (std::size_t i = 0; i < sub.arity(); ++i) {
    p.push_back(i + 1);
    auto hit = find_outermost(system, sub.arg(i), p, sigma);
    p.pop_back();
    if (hit) return hit;
  }
  return std::nullopt;
}

std::optional<std::pair<Position, std::size_t>> find_innermost(const Ptrs& system, const Term& sub,
                                                               Position& p, Substitution& sigma) {
  for (std::size_t i = 0; i < sub.arity(); ++i) {
    p.push_back(i + 1);
    auto hit = find_innermost(system, sub.arg(i), p, sigma);
    p.pop_back();
    if (hit) return hit;
  }
  return first_rule_at(system, sub, p, sigma);
}

}  // namespace

std::optional<Reduct<Term>> TermPars::strategy_reduct(const Term& t, Strategy s) const {
  Position p;
  Substitution sigma;
  auto hit = s == Strategy::LeftmostOutermost ? find_outermost(*system_, t, p, sigma)
                                              : find_innermost(*system_, t, p, sigma);
  if (!hit) return std::nullopt;
  const auto& [position, rule] = *hit;
  return Reduct<Term>{contract(system_->rules()[rule], t, position, sigma), position, rule};
}

namespace {

class ArsPars final : public Pars<std::string> {
 public:
  explicit ArsPars(const Ars& ars) {
    for (const auto& [from, to] : ars.edges) successors_[from].push_back(to);
  }
  std::vector<Reduct<std::string>> reducts(const std::string& a) const override {
    std::vector<Reduct<std::string>> out;
    auto it = successors_.find(a);
    if (it == successors_.end()) return out;
    for (std::size_t i = 0; i < it->second.size(); ++i) {
      out.push_back({FiniteDistribution<std::string>::point(it->second[i]), {}, i});
    }
    return out;
  }

 private:
  std::map<std::string, std::vector<std::string>> successors_;
};

}  // namespace

EmbeddingVerdict ars_embedding_check(const Ars& ars) {
  EmbeddingVerdict verdict;
  ArsPars pars(ars);
  for (const std::string& a : ars.objects) {
    std::set<std::string> expected;
    for (const auto& [from, to] : ars.edges)
      if (from == a) expected.insert(to);

    auto successors = step_all(pars, MultiDistribution<std::string>::point(a), 1u << 20);
    std::set<std::string> seen;
    for (const auto& mu : successors) {
      if (expected.empty()) {
        if (!mu.empty()) verdict.violations.push_back("normal form " + a + " steps to " + mu.to_string());
        continue;
      }
      if (mu.size() != 1 || mu.entries().front().probability != 1 ||
          !expected.contains(mu.entries().front().object)) {
        verdict.violations.push_back(a + " steps to non-successor " + mu.to_string());
        continue;
      }
      seen.insert(mu.entries().front().object);
    }
    if (expected.empty() && successors.size() != 1)
      verdict.violations.push_back("normal form " + a + " does not step to exactly the empty multidistribution");
    if (!expected.empty() && seen != expected)
      verdict.violations.push_back("successors of " + a + " are not all reachable");
  }
  verdict.holds = verdict.violations.empty();
  return verdict;
}

}  // namespace ptrs
