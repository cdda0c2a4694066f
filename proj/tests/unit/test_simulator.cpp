#include <doctest.h>

#include <map>

#include "ptrs/certificate_io.hpp"
#include "ptrs/error.hpp"
#include "ptrs/families.hpp"
#include "ptrs/simulator.hpp"
#include "support.hpp"

using namespace ptrs;
using testing::q;
using testing::T;

namespace {

using FO = FamilyObject;
using MF = MultiDistribution<FO>;

FO n(std::int64_t k) { return FO::number(k); }
FO named(const char* s) { return FO::named(s); }

Ptrs load(const char* name) { return elaborate(read_problem_file(testing::source_path(std::string("problems/") + name))); }

Certificate certificate(const char* wst, const char* cert) {
  auto check = check_certificate(parse_interpretation(testing::slurp(testing::source_path(std::string("problems/") + cert))),
                                 load(wst));
  REQUIRE(check.accepted);
  return *check.certificate;
}

std::vector<Rational> masses(const RunReport<FO>& r) {
  std::vector<Rational> out;
  for (const auto& row : r.rows) out.push_back(row.mass_min);
  return out;
}

// Transition law of the walk killed at 0, by dynamic programming over
// heights.
std::map<std::int64_t, Rational> walk_distribution(const Rational& p, std::int64_t start, int steps) {
  std::map<std::int64_t, Rational> dist{{start, Rational(1)}};
  for (int k = 0; k < steps; ++k) {
    std::map<std::int64_t, Rational> next;
    for (const auto& [h, w] : dist) {
      if (h == 0) continue;
      if (p != 0) next[h - 1] += w * p;
      if (p != 1) next[h + 1] += w * (1 - p);
    }
    dist = std::move(next);
  }
  return dist;
}

}  // namespace

TEST_SUITE("simulator") {
  TEST_CASE("random walk mass sequence and trace") {
    RandomWalk rw(q("1/2"), 1000);
    RunConfig cfg;
    cfg.steps = 4;
    cfg.trace = true;
    const auto r = run<FO>(rw, MF::point(n(1)), cfg);
    CHECK(masses(r) == std::vector<Rational>{1, 1, q("1/2"), q("1/2"), q("3/8")});
    REQUIRE(r.trace.size() == 5);
    CHECK(r.trace[1] == MF{{q("1/2"), n(0)}, {q("1/2"), n(2)}});
    CHECK(r.trace[2] == MF{{q("1/4"), n(1)}, {q("1/4"), n(3)}});
    CHECK(r.trace[3] == MF{{q("1/8"), n(0)}, {q("1/8"), n(2)}, {q("1/8"), n(2)}, {q("1/8"), n(4)}});
    CHECK(r.trace[3].to_string([](const FO& o) { return to_string(o); }) == "{1/8: 0, 1/8: 2, 1/8: 2, 1/8: 4}");
    CHECK(r.rows[4].edl_min == q("19/8"));

    cfg.mode = RunMode::Exhaustive;
    const auto e = run<FO>(rw, MF::point(n(1)), cfg);
    CHECK(masses(e) == masses(r));
    for (const auto& row : e.rows) CHECK(row.mass_min == row.mass_max);
  }

  TEST_CASE("nondeterministic example envelope") {
    NondeterministicExample amd;
    RunConfig cfg;
    cfg.steps = 3;
    cfg.mode = RunMode::Exhaustive;
    const auto r = run<FO>(amd, MF::point(named("a")), cfg);
    REQUIRE(r.final_set.size() == 3);
    std::vector<MF> collapsed_finals;
    for (const auto& mu : r.final_set) collapsed_finals.push_back(collapsed(mu));
    const std::vector<MF> expected{MF::point(named("d1")), MF{{q("1/2"), named("d1")}, {q("1/2"), named("d2")}},
                                   MF::point(named("d2"))};
    for (const auto& e : expected) CHECK(std::count(collapsed_finals.begin(), collapsed_finals.end(), e) == 1);
    CHECK(std::count(r.final_set.begin(), r.final_set.end(), MF{{q("1/2"), named("d1")}, {q("1/2"), named("d1")}}) == 1);

    const auto brute = brute_force_reducts<FO>(amd, MF::point(named("a")), 3);
    CHECK(brute.size() == 3);
    CHECK(brute == r.final_set);
    CHECK(brute_force_reducts<FO>(amd, MF::point(named("a")), 0) == std::vector<MF>{MF::point(named("a"))});
    CHECK(brute_force_reducts<FO>(amd, MF::point(named("a")), 2) ==
          std::vector<MF>{MF{{q("1/2"), named("c")}, {q("1/2"), named("c")}}});

    RandomWalk rw(q("1/2"), 100);
    CHECK(brute_force_reducts<FO>(rw, MF::point(n(1)), 2) == std::vector<MF>{MF{{q("1/4"), n(1)}, {q("1/4"), n(3)}}});
  }

  TEST_CASE("normal-form starts") {
    RandomWalk rw(q("1/2"), 100);
    RunConfig cfg;
    cfg.steps = 3;
    CHECK(masses(run<FO>(rw, MF::point(n(0)), cfg)) == std::vector<Rational>{1, 0, 0, 0});
    const std::function<Rational(const FO&)> f = [](const FO& o) { return Rational(o.index); };
    const Rational eps = q("1/2");
    const auto e = estimate_edh<FO>(rw, n(0), cfg, &f, &eps);
    CHECK(e.run.rows.back().edl_max == 0);
    CHECK(e.bound_holds);
  }

  TEST_CASE("exhaustive envelope contains every strategy run") {
    const Ptrs coin = load("coin.wst");
    TermPars pars(coin);
    for (const char* start : {"?(0)", "?(s(0))", "$(s(s(0)))", "s(?(0))"}) {
      RunConfig cfg;
      cfg.steps = 6;
      cfg.mode = RunMode::Exhaustive;
      const auto env = run<Term>(pars, MultiDistribution<Term>::point(T(start)), cfg);
      for (RunMode m : {RunMode::Innermost, RunMode::Outermost, RunMode::Random}) {
        for (std::uint64_t seed = 1; seed <= (m == RunMode::Random ? 10u : 1u); ++seed) {
          cfg.mode = m;
          cfg.seed = seed;
          const auto r = run<Term>(pars, MultiDistribution<Term>::point(T(start)), cfg);
          for (std::size_t k = 0; k < r.rows.size(); ++k) {
            CHECK(env.rows[k].mass_min <= r.rows[k].mass_min);
            CHECK(r.rows[k].mass_min <= env.rows[k].mass_max);
            CHECK(env.rows[k].edl_min <= r.rows[k].edl_min);
            CHECK(r.rows[k].edl_min <= env.rows[k].edl_max);
          }
        }
      }
    }
  }

  TEST_CASE("random walk agrees with a dynamic-programming oracle") {
    for (const char* p : {"1/2", "3/4", "1/3"}) {
      RandomWalk rw(q(p), 10'000);
      for (std::int64_t start : {1, 2, 5}) {
        StrategyChooser<FO> chooser(Strategy::LeftmostOutermost);
        MF mu = MF::point(n(start));
        for (int k = 1; k <= 12; ++k) {
          mu = step_multidist<FO>(rw, mu, chooser);
          const auto oracle = walk_distribution(q(p), start, k);
          std::map<std::int64_t, Rational> observed;
          for (const auto& [o, w] : collapse(mu)) observed[o.index] = w;
          std::map<std::int64_t, Rational> expected;
          for (const auto& [h, w] : oracle) expected[h] = w;
          CHECK(observed == expected);
        }
      }
    }
  }

  TEST_CASE("edl partial sums are monotone and bounded by the certificate") {
    const Ptrs rw34 = load("rw34.wst");
    TermPars pars(rw34);
    const Certificate cert = certificate("rw34.wst", "rw34.cert");
    const Ranking rank = ranking_from_certificate(cert);
    RunConfig cfg;
    cfg.steps = 60;
    cfg.collapse = true;
    const auto e = estimate_edh<Term>(pars, T("s(s(s(s(0))))"), cfg, &rank.value, &rank.epsilon);
    REQUIRE(e.bound);
    CHECK(*e.bound == 8);
    CHECK(e.bound_holds);
    for (std::size_t k = 1; k < e.run.rows.size(); ++k) {
      CHECK(e.run.rows[k].edl_min >= e.run.rows[k - 1].edl_min);
      CHECK(e.run.rows[k].mass_min <= e.run.rows[k - 1].mass_min);
      CHECK(e.run.rows[k].edl_min < 8);
    }
    CHECK(e.run.rows.back().edl_min > Rational(79, 10));

    // A bound that is too small is reported, with the first violating step.
    const Rational big_eps = 1;
    const auto v = estimate_edh<Term>(pars, T("s(s(s(s(0))))"), cfg, &rank.value, &big_eps);
    CHECK_FALSE(v.bound_holds);
    REQUIRE(v.first_violation);
    CHECK(*v.first_violation == 5);
  }

  TEST_CASE("the exploding family has growing derivation height") {
    Rational previous = 0;
    for (std::int64_t k = 1; k <= 4; ++k) {
      ExplodingFamily an(20);
      RunConfig cfg;
      cfg.mode = RunMode::Exhaustive;
      cfg.steps = static_cast<std::size_t>(k + 1 + (std::int64_t(1) << k) * k);
      const auto r = run<FO>(an, MF::point(FO::indexed("a", 0)), cfg);
      CHECK(r.rows.back().edl_max >= k);
      CHECK(r.rows.back().edl_max > previous);
      previous = r.rows.back().edl_max;
    }
  }

  TEST_CASE("budget and truncation are reported") {
    NondeterministicExample amd;
    RunConfig cfg;
    cfg.steps = 3;
    cfg.mode = RunMode::Exhaustive;
    cfg.node_budget = 2;
    CHECK_THROWS_AS(run<FO>(amd, MF::point(named("a")), cfg), Error);

    RandomWalk rw(q("1/2"), 3);
    RunConfig deep;
    deep.steps = 6;
    const auto r = run<FO>(rw, MF::point(n(2)), deep);
    CHECK(r.truncation_hit);
    CHECK_FALSE(run<FO>(RandomWalk(q("1/2"), 100), MF::point(n(2)), deep).truncation_hit);
  }

  TEST_CASE("drift harness") {
    DriftConfig cfg;
    const auto rw = drift_harness(load("rw34.wst"), certificate("rw34.wst", "rw34.cert"), cfg);
    CHECK(rw.passed);
    CHECK(rw.steps_checked > 100);
    const auto coin = drift_harness(load("coin.wst"), certificate("coin.wst", "coin.cert"), cfg);
    CHECK(coin.passed);
    const auto ab = drift_harness(load("ab14.wst"), certificate("ab14.wst", "ab14.cert"), cfg);
    CHECK(ab.passed);

    cfg.epsilon_override = 2 * certificate("rw34.wst", "rw34.cert").epsilon;
    const auto broken = drift_harness(load("rw34.wst"), certificate("rw34.wst", "rw34.cert"), cfg);
    CHECK_FALSE(broken.passed);
    REQUIRE(broken.counterexample);
    CHECK(broken.counterexample->find("nu = ") != std::string::npos);
  }

  TEST_CASE("run modes parse") {
    CHECK(parse_run_mode("exhaustive") == RunMode::Exhaustive);
    CHECK(to_string(RunMode::Innermost) == "innermost");
    CHECK_THROWS_AS(parse_run_mode("sideways"), Error);
  }
}
