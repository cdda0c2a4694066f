#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ptrs/interpretation.hpp"
#include "ptrs/multidist.hpp"
#include "ptrs/rewriting.hpp"

namespace ptrs {

enum class RunMode { Exhaustive, Innermost, Outermost, Random };

RunMode parse_run_mode(const std::string& name);
std::string to_string(RunMode mode);

struct RunConfig {
  std::size_t steps = 10;
  RunMode mode = RunMode::Outermost;
  std::uint64_t seed = 1;
  /// Merge equal objects after every step. Masses and the collapsed
  /// distributions are unchanged for the positional strategies, which
  /// pick by object alone; multiset identity of entries is lost.
  bool collapse = false;
  std::size_t node_budget = 1'000'000;
  bool trace = false;
};

/// Row k describes mu_k. In exhaustive mode min/max range over every
/// reachable mu_k; otherwise they coincide.
struct StepRow {
  std::size_t step = 0;
  Rational mass_min, mass_max;
  /// Partial expected derivation length sum_{i=1..k} |mu_i|.
  Rational edl_min, edl_max;
  /// Number of entries (strategy mode) or of distinct multidistributions
  /// (exhaustive mode).
  std::size_t width = 0;
};

template <class Obj>
struct RunReport {
  std::vector<StepRow> rows;
  bool truncation_hit = false;
  /// mu_0..mu_n in strategy mode when tracing.
  std::vector<MultiDistribution<Obj>> trace;
  /// Every distinct mu_n in exhaustive mode.
  std::vector<MultiDistribution<Obj>> final_set;
};

template <class Obj>
std::unique_ptr<Chooser<Obj>> make_chooser(RunMode mode, std::uint64_t seed) {
  switch (mode) {
    case RunMode::Innermost: return std::make_unique<StrategyChooser<Obj>>(Strategy::LeftmostInnermost);
    case RunMode::Outermost: return std::make_unique<StrategyChooser<Obj>>(Strategy::LeftmostOutermost);
    case RunMode::Random: return std::make_unique<RandomChooser<Obj>>(seed);
    case RunMode::Exhaustive: break;
  }
  throw Error(ErrorCode::Usage, "exhaustive mode has no single chooser");
}

/// The exact set (up to multiset equality) of k-step reducts of `mu` over
/// every combination of choices.
template <class Obj>
std::vector<MultiDistribution<Obj>> brute_force_reducts(const Pars<Obj>& pars, const MultiDistribution<Obj>& mu,
                                                        std::size_t k, std::size_t budget = 1'000'000) {
  std::set<MultiDistribution<Obj>> current{mu};
  std::size_t nodes = 1;
  for (std::size_t i = 0; i < k; ++i) {
    std::set<MultiDistribution<Obj>> next;
    for (const auto& m : current) {
      for (auto& successor : step_all(pars, m, budget)) {
        next.insert(std::move(successor));
        if (++nodes > budget)
          throw Error(ErrorCode::NodeBudgetExceeded, "exhaustive expansion exceeds node budget of " + std::to_string(budget));
      }
    }
    current = std::move(next);
  }
  return {current.begin(), current.end()};
}

/// Iterates the multidistribution reduction relation from `start`.
template <class Obj>
RunReport<Obj> run(const Pars<Obj>& pars, const MultiDistribution<Obj>& start, const RunConfig& cfg) {
  RunReport<Obj> report;
  const Rational m0 = mass(start);
  report.rows.push_back({0, m0, m0, 0, 0, start.size()});

  if (cfg.mode != RunMode::Exhaustive) {
    auto chooser = make_chooser<Obj>(cfg.mode, cfg.seed);
    MultiDistribution<Obj> mu = start;
    if (cfg.trace) report.trace.push_back(mu);
    Rational edl = 0;
    for (std::size_t k = 1; k <= cfg.steps; ++k) {
      StepStats stats;
      mu = step_multidist(pars, mu, *chooser, &stats);
      if (cfg.collapse) mu = collapsed(mu);
      report.truncation_hit = report.truncation_hit || stats.truncation_hit;
      const Rational m = mass(mu);
      edl += m;
      report.rows.push_back({k, m, m, edl, edl, mu.size()});
      if (cfg.trace) report.trace.push_back(mu);
    }
    return report;
  }

  // Exhaustive: states are (mu_k, partial edl) pairs, deduplicated.
  using State = std::pair<MultiDistribution<Obj>, Rational>;
  auto less = [](const State& a, const State& b) {
    if (a.first < b.first) return true;
    if (b.first < a.first) return false;
    return a.second < b.second;
  };
  std::set<State, decltype(less)> states(less);
  states.insert({start, Rational(0)});
  std::size_t nodes = 1;
  for (std::size_t k = 1; k <= cfg.steps; ++k) {
    std::set<State, decltype(less)> next(less);
    for (const auto& [mu, edl] : states) {
      StepStats stats;
      for (auto& successor : step_all(pars, mu, cfg.node_budget, &stats)) {
        if (++nodes > cfg.node_budget)
          throw Error(ErrorCode::NodeBudgetExceeded,
                      "exhaustive expansion exceeds node budget of " + std::to_string(cfg.node_budget));
        Rational e = edl + mass(successor);
        next.insert({std::move(successor), std::move(e)});
      }
      report.truncation_hit = report.truncation_hit || stats.truncation_hit;
    }
    states = std::move(next);
    StepRow row{k, 0, 0, 0, 0, 0};
    bool first = true;
    std::set<MultiDistribution<Obj>> distinct;
    for (const auto& [mu, edl] : states) {
      const Rational m = mass(mu);
      if (first || m < row.mass_min) row.mass_min = m;
      if (first || m > row.mass_max) row.mass_max = m;
      if (first || edl < row.edl_min) row.edl_min = edl;
      if (first || edl > row.edl_max) row.edl_max = edl;
      first = false;
      distinct.insert(mu);
    }
    row.width = distinct.size();
    report.rows.push_back(row);
    if (k == cfg.steps) report.final_set.assign(distinct.begin(), distinct.end());
  }
  if (cfg.steps == 0) report.final_set.push_back(start);
  return report;
}

template <class Obj>
Rational expected_value(const MultiDistribution<Obj>& mu, const std::function<Rational(const Obj&)>& f) {
  Rational total = 0;
  for (const auto& e : mu) total += e.probability * f(e.object);
  return total;
}

template <class Obj>
struct EdhReport {
  RunReport<Obj> run;
  /// f(a) / epsilon when a ranking is supplied.
  std::optional<Rational> bound;
  /// edl_n <= bound for every n (max over choices in exhaustive mode).
  bool bound_holds = true;
  std::optional<std::size_t> first_violation;
};

/// Runs from {1:a} and, given a ranking, checks every partial expected
/// derivation length against f(a)/epsilon.
template <class Obj>
EdhReport<Obj> estimate_edh(const Pars<Obj>& pars, const Obj& start, const RunConfig& cfg,
                            const std::function<Rational(const Obj&)>* ranking = nullptr,
                            const Rational* epsilon = nullptr) {
  EdhReport<Obj> report;
  report.run = run(pars, MultiDistribution<Obj>::point(start), cfg);
  if (ranking && epsilon) {
    if (*epsilon <= 0) throw Error(ErrorCode::NotOriented, "epsilon must be positive");
    report.bound = (*ranking)(start) / *epsilon;
    for (const StepRow& row : report.run.rows) {
      if (row.edl_max > *report.bound) {
        report.bound_holds = false;
        if (!report.first_violation) report.first_violation = row.step;
      }
    }
  }
  return report;
}

struct DriftConfig {
  std::size_t trials = 100;
  std::size_t depth = 20;
  std::uint64_t seed = 7;
  /// Upper bound on the node count of random start terms.
  std::size_t max_start_size = 8;
  /// Entry count above which a multidistribution is collapsed before the
  /// next step.
  std::size_t collapse_above = 64;
  /// Replaces the certificate's epsilon (mutation testing).
  std::optional<Rational> epsilon_override;
};

struct DriftResult {
  bool passed = true;
  std::size_t steps_checked = 0;
  std::optional<std::string> counterexample;
};

/// Random ground (or, without constants, single-variable) term over the
/// signature with at most `max_size` nodes.
Term random_term(const Signature& signature, std::mt19937_64& rng, std::size_t max_size);

/// Checks E(f(mu)) >= E(f(nu)) + epsilon * |nu| exactly on every step of
/// random runs, f being the certificate's ranking.
DriftResult drift_harness(const Ptrs& system, const Certificate& cert, const DriftConfig& cfg);

}  // namespace ptrs
