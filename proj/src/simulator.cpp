#include "ptrs/simulator.hpp"

#include "ptrs/error.hpp"

namespace ptrs {

RunMode parse_run_mode(const std::string& name) {
  if (name == "exhaustive") return RunMode::Exhaustive;
  if (name == "innermost") return RunMode::Innermost;
  if (name == "outermost") return RunMode::Outermost;
  if (name == "random") return RunMode::Random;
  throw Error(ErrorCode::Usage, "unknown mode '" + name + "' (expected exhaustive, innermost, outermost or random)");
}

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Exhaustive: return "exhaustive";
    case RunMode::Innermost: return "innermost";
    case RunMode::Outermost: return "outermost";
    case RunMode::Random: return "random";
  }
  return "?";
}

namespace {

Term random_term_of_size(const std::vector<std::pair<std::string, std::size_t>>& symbols,
                         const std::vector<Term>& leaves, std::mt19937_64& rng, std::size_t budget) {
  std::vector<std::pair<std::string, std::size_t>> candidates;
  for (const auto& s : symbols)
    if (s.second >= 1 && s.second + 1 <= budget) candidates.push_back(s);
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() + leaves.size() - 1);
  const std::size_t choice = pick(rng);
  if (choice >= candidates.size()) return leaves[choice - candidates.size()];
  const auto& [name, arity] = candidates[choice];
  const std::size_t share = (budget - 1) / arity;
  std::vector<Term> args;
  for (std::size_t i = 0; i < arity; ++i) args.push_back(random_term_of_size(symbols, leaves, rng, share));
  return Term::apply(name, std::move(args));
}

}  // namespace

Term random_term(const Signature& signature, std::mt19937_64& rng, std::size_t max_size) {
  std::vector<std::pair<std::string, std::size_t>> symbols(signature.symbols().begin(), signature.symbols().end());
  std::vector<Term> leaves;
  for (const auto& [name, arity] : symbols)
    if (arity == 0) leaves.push_back(Term::apply(name));
  if (leaves.empty()) leaves.push_back(Term::variable("x"));
  return random_term_of_size(symbols, leaves, rng, std::max<std::size_t>(max_size, 1));
}

DriftResult drift_harness(const Ptrs& system, const Certificate& cert, const DriftConfig& cfg) {
  DriftResult result;
  const Ranking ranking = ranking_from_certificate(cert);
  const Rational epsilon = cfg.epsilon_override.value_or(ranking.epsilon);
  const std::function<Rational(const Term&)> f = ranking.value;
  TermPars pars(system);
  std::mt19937_64 rng(cfg.seed);

  for (std::size_t trial = 0; trial < cfg.trials && result.passed; ++trial) {
    const Term start = random_term(system.signature(), rng, cfg.max_start_size);
    RandomChooser<Term> chooser(rng());
    std::uniform_int_distribution<std::size_t> depth_pick(1, std::max<std::size_t>(cfg.depth, 1));
    const std::size_t depth = depth_pick(rng);

    MultiDistribution<Term> mu = MultiDistribution<Term>::point(start);
    Rational before = expected_value(mu, f);
    for (std::size_t k = 0; k < depth && !mu.empty(); ++k) {
      MultiDistribution<Term> nu = step_multidist(pars, mu, chooser);
      if (nu.size() > cfg.collapse_above) nu = collapsed(nu);
      const Rational after = expected_value(nu, f);
      const Rational slack = epsilon * mass(nu);
      ++result.steps_checked;
      if (before < after + slack) {
        result.passed = false;
        result.counterexample = "trial " + std::to_string(trial) + ", step " + std::to_string(k) +
                                ": mu = " + mu.to_string() + ", nu = " + nu.to_string() +
                                ", E(f(mu)) = " + to_string(before) + ", E(f(nu)) = " + to_string(after) +
                                ", epsilon*|nu| = " + to_string(slack);
        break;
      }
      mu = std::move(nu);
      before = after;
    }
  }
  return result;
}

}  // namespace ptrs
