#include <doctest.h>

#include <random>

#include "ptrs/families.hpp"
#include "ptrs/simulator.hpp"
#include "support.hpp"

using namespace ptrs;
using testing::q;
using testing::T;

namespace {

Ptrs system_of(const std::string& rules) { return elaborate(parse_problem("(VAR x y z) (RULES " + rules + ")")); }

using FO = FamilyObject;
using MF = MultiDistribution<FO>;

FO n(std::int64_t k) { return FO::number(k); }
FO named(const char* s) { return FO::named(s); }

// Picks option i for the i-th entry it is asked about (cycling).
class ScriptedChooser final : public Chooser<FO> {
 public:
  explicit ScriptedChooser(std::vector<std::size_t> script) : script_(std::move(script)) {}
  std::optional<Reduct<FO>> choose(const Pars<FO>& pars, const FO& o) override {
    auto all = pars.reducts(o);
    if (all.empty()) return std::nullopt;
    return all[script_[calls_++ % script_.size()] % all.size()];
  }
  std::string name() const override { return "scripted"; }

 private:
  std::vector<std::size_t> script_;
  std::size_t calls_ = 0;
};

// Textbook one-step rewriting for point-mass systems, written against the
// raw rules: rewrite the first redex found by the given traversal.
std::optional<Term> classic_step(const std::vector<std::pair<Term, Term>>& rules, const Term& t, bool innermost) {
  if (!innermost) {
    for (const auto& [l, r] : rules)
      if (auto m = match(l, t)) return apply_substitution(r, *m);
  }
  if (!t.is_variable()) {
    for (std::size_t i = 0; i < t.arity(); ++i) {
      if (auto s = classic_step(rules, t.arg(i), innermost)) {
        std::vector<Term> args(t.args().begin(), t.args().end());
        args[i] = *s;
        return Term::apply(t.name(), args);
      }
    }
  }
  if (innermost) {
    for (const auto& [l, r] : rules)
      if (auto m = match(l, t)) return apply_substitution(r, *m);
  }
  return std::nullopt;
}

Term random_ground(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 4);
  switch (pick(rng)) {
    case 0: return T("0");
    case 1: return T("a");
    case 2: return Term::apply("s", {random_ground(rng, depth - 1)});
    case 3: return Term::apply("d", {random_ground(rng, depth - 1)});
    default: return Term::apply("plus", {random_ground(rng, depth - 1), random_ground(rng, depth - 1)});
  }
}

}  // namespace

TEST_SUITE("rewriting") {
  TEST_CASE("two redexes of the random walk rule") {
    const Ptrs rw = system_of("s(x) -> 3 : x || 1 : s(s(x))");
    const auto steps = enumerate_redexes(rw, T("s(f(s(0)))"));
    REQUIRE(steps.size() == 2);
    CHECK(steps[0].position == Position{});
    CHECK(steps[0].result.probability(T("f(s(0))")) == q("3/4"));
    CHECK(steps[0].result.probability(T("s(s(f(s(0))))")) == q("1/4"));
    CHECK(steps[1].position == Position{1, 1});
    CHECK(steps[1].result.probability(T("s(f(0))")) == q("3/4"));
    CHECK(steps[1].result.probability(T("s(f(s(s(0))))")) == q("1/4"));
    CHECK(enumerate_redexes(rw, T("f(0)")).empty());
  }

  TEST_CASE("instantiated right-hand sides collapse") {
    const Ptrs sys = system_of("f(x,y) -> 1 : x || 1 : y");
    const auto steps = enumerate_redexes(sys, T("f(a,a)"));
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].result.is_point_mass());
    CHECK(steps[0].result.probability(T("a")) == 1);
  }

  TEST_CASE("integer weights") {
    const Ptrs sys = system_of("f(x) -> 2 : x || 6 : g(x) || 4 : h(x)");
    auto [w, ws] = integer_weights(sys.rules()[0]);
    CHECK(w == 6);
    CHECK(ws == std::vector<Integer>{1, 3, 2});
    CHECK(to_string(sys.rules()[0]) == "f(x) -> 1 : x || 3 : g(x) || 2 : h(x)");
    CHECK(to_string(system_of("f(x) -> x").rules()[0]) == "f(x) -> x");
  }

  TEST_CASE("ptrs hygiene") {
    const Term x = Term::variable("x");
    CHECK_THROWS_AS(Ptrs(std::vector<ProbRule>{ProbRule{x, FiniteDistribution<Term>::point(T("a"))}}), Error);
    CHECK_THROWS_AS(Ptrs(std::vector<ProbRule>{ProbRule{T("f(x)"), FiniteDistribution<Term>::point(T("y"))}}), Error);
  }

  TEST_CASE("random walk stepping") {
    RandomWalk rw(q("1/2"), 1000);
    StrategyChooser<FO> chooser(Strategy::LeftmostOutermost);
    const MF mu1 = step_multidist<FO>(rw, MF::point(n(1)), chooser);
    CHECK(mu1 == MF{{q("1/2"), n(0)}, {q("1/2"), n(2)}});
    const MF mu2 = step_multidist<FO>(rw, mu1, chooser);
    CHECK(mu2 == MF{{q("1/4"), n(1)}, {q("1/4"), n(3)}});
  }

  TEST_CASE("per-entry choice in the nondeterministic example") {
    NondeterministicExample amd;
    ScriptedChooser chooser({0, 1});
    const MF cc{{q("1/2"), named("c")}, {q("1/2"), named("c")}};
    CHECK(step_multidist<FO>(amd, cc, chooser) == MF{{q("1/2"), named("d1")}, {q("1/2"), named("d2")}});
    const auto all = step_all<FO>(amd, cc, 100);
    CHECK(all.size() == 4);
  }

  TEST_CASE("ars embedding") {
    CHECK(ars_embedding_check({{"a", "b"}, {{"a", "b"}}}).holds);
    CHECK(ars_embedding_check({{"c"}, {}}).holds);
    CHECK(ars_embedding_check({{"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}}).holds);

    // Two steps along a -> b -> c from {1:a} reach {1:c}.
    const Ptrs chain = system_of("a -> b b -> c");
    TermPars pars(chain);
    CHECK(brute_force_reducts<Term>(pars, MultiDistribution<Term>::point(T("a")), 2) ==
          std::vector<MultiDistribution<Term>>{MultiDistribution<Term>::point(T("c"))});
  }

  TEST_CASE("mass never increases and terminals vanish") {
    const Ptrs coin = elaborate(read_problem_file(testing::source_path("problems/coin.wst")));
    TermPars pars(coin);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
      MultiDistribution<Term> mu = MultiDistribution<Term>::point(random_term(coin.signature(), rng, 7));
      RandomChooser<Term> chooser(trial);
      for (int k = 0; k < 10; ++k) {
        auto next = step_multidist<Term>(pars, mu, chooser);
        CHECK(mass(next) <= mass(mu));
        mu = next;
      }
    }
    MultiDistribution<Term> terminals{{q("1/3"), T("0")}, {q("1/3"), T("$(f(0))")}};
    StrategyChooser<Term> chooser(Strategy::LeftmostInnermost);
    CHECK(step_multidist<Term>(pars, terminals, chooser).empty());
  }

  TEST_CASE("context and substitution closure") {
    const Ptrs coin = elaborate(read_problem_file(testing::source_path("problems/coin.wst")));
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
      const Term t = random_term(coin.signature(), rng, 6);
      const auto inner = enumerate_redexes(coin, t);
      if (inner.empty()) continue;
      // Wrap t into a random one-hole context C.
      Term context = Term::variable("HOLE");
      const int wraps = 1 + static_cast<int>(rng() % 3);
      for (int w = 0; w < wraps; ++w) context = Term::apply(rng() % 2 ? "s" : "$", {context});
      const Term ct = apply_substitution(context, {{"HOLE", t}});
      Position prefix(wraps, 1);
      const auto outer = enumerate_redexes(coin, ct);
      for (const RedexStep& r : inner) {
        Position p = prefix;
        p.insert(p.end(), r.position.begin(), r.position.end());
        bool found = false;
        for (const RedexStep& o : outer) {
          if (o.position != p || o.rule != r.rule) continue;
          found = true;
          for (const auto& [u, prob] : r.result)
            CHECK(o.result.probability(apply_substitution(context, {{"HOLE", u}})) == prob);
        }
        CHECK(found);
      }
    }

    // Root instances l sigma step to collapse(d sigma).
    for (std::size_t i = 0; i < coin.rules().size(); ++i) {
      const ProbRule& rule = coin.rules()[i];
      const Substitution sigma{{"x", random_term(coin.signature(), rng, 4)}};
      const Term instance = apply_substitution(rule.lhs, sigma);
      std::vector<std::pair<Term, Rational>> image;
      for (const auto& [u, p] : rule.rhs) image.emplace_back(apply_substitution(u, sigma), p);
      const auto expected = FiniteDistribution<Term>::from_entries(image);
      bool found = false;
      for (const RedexStep& r : enumerate_redexes(coin, instance)) {
        if (!r.position.empty() || r.rule != i) continue;
        found = true;
        CHECK(r.result == expected);
      }
      CHECK(found);
    }
  }

  TEST_CASE("strategy overrides agree with the generic selection") {
    const Ptrs sys = system_of("s(x) -> 1 : x || 1 : s(s(x)) d(s(x)) -> s(s(d(x))) plus(s(x),y) -> s(plus(x,y)) plus(0,y) -> y");
    TermPars pars(sys);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 300; ++trial) {
      const Term t = random_ground(rng, 5);
      for (Strategy s : {Strategy::LeftmostInnermost, Strategy::LeftmostOutermost}) {
        auto fast = pars.strategy_reduct(t, s);
        auto slow = pars.Pars<Term>::strategy_reduct(t, s);
        REQUIRE(fast.has_value() == slow.has_value());
        if (!fast) continue;
        CHECK(fast->position == slow->position);
        CHECK(fast->rule == slow->rule);
        CHECK(fast->distribution == slow->distribution);
      }
    }
  }

  TEST_CASE("point-mass systems follow a classic rewrite engine") {
    const std::vector<std::pair<Term, Term>> rules{{T("d(0)"), T("0")},
                                                   {T("d(s(x))"), T("s(s(d(x)))")},
                                                   {T("plus(0,y)"), T("y")},
                                                   {T("plus(s(x),y)"), T("s(plus(x,y))")}};
    const Ptrs sys = system_of("d(0) -> 0 d(s(x)) -> s(s(d(x))) plus(0,y) -> y plus(s(x),y) -> s(plus(x,y))");
    TermPars pars(sys);
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
      const Term start = random_ground(rng, 4);
      for (bool innermost : {true, false}) {
        StrategyChooser<Term> chooser(innermost ? Strategy::LeftmostInnermost : Strategy::LeftmostOutermost);
        MultiDistribution<Term> mu = MultiDistribution<Term>::point(start);
        std::optional<Term> classic = start;
        for (int k = 0; k < 30; ++k) {
          mu = step_multidist<Term>(pars, mu, chooser);
          classic = classic_step(rules, *classic, innermost);
          if (!classic) {
            CHECK(mu.empty());
            break;
          }
          CHECK(mu == MultiDistribution<Term>::point(*classic));
        }
      }
    }
  }

  TEST_CASE("family objects") {
    CHECK(parse_family_object("12") == n(12));
    CHECK(parse_family_object("a") == named("a"));
    CHECK(parse_family_object("a_3") == FO::indexed("a", 3));
    CHECK(parse_family_object("a3") == FO::indexed("a", 3));
    CHECK(to_string(FO::indexed("a", 3)) == "a_3");

    ExplodingFamily an(10);
    const auto options = an.reducts(FO::indexed("a", 3));
    REQUIRE(options.size() == 2);
    CHECK(options[0].distribution.probability(FO::indexed("a", 4)) == q("1/2"));
    CHECK(options[0].distribution.probability(n(0)) == q("1/2"));
    CHECK(options[1].distribution == FiniteDistribution<FO>::point(n(24)));
    CHECK(an.reducts(n(0)).empty());
    CHECK(an.reducts(n(5)).size() == 1);

    RandomWalk rw(q("3/4"), 5);
    CHECK(rw.beyond_bound(n(6)));
    StepStats stats;
    StrategyChooser<FO> chooser(Strategy::LeftmostOutermost);
    step_multidist<FO>(rw, MF::point(n(6)), chooser, &stats);
    CHECK(stats.truncation_hit);
  }
}
