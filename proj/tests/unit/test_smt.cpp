#include <doctest.h>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <thread>

#include "ptrs/error.hpp"
#include "ptrs/smt.hpp"
#include "support.hpp"

using namespace ptrs;
using testing::q;
using namespace std::chrono_literals;

namespace {

Ptrs load(const char* name) { return elaborate(read_problem_file(testing::source_path(std::string("problems/") + name))); }
Ptrs system_of(const std::string& rules) { return elaborate(parse_problem("(VAR x y z) (RULES " + rules + ")")); }

bool have_z3() { return std::system("command -v z3 >/dev/null 2>&1") == 0; }

std::vector<std::string> unknown_names(const ConstraintSet& cs) {
  std::vector<std::string> out;
  for (const auto& u : cs.unknowns) out.push_back(u.name);
  return out;
}

// Calls `visit` with every assignment of the unknowns into 0..bound.
void for_each_assignment(const ConstraintSet& cs, int bound, const std::function<void(const Assignment&)>& visit) {
  Assignment a;
  for (const auto& u : cs.unknowns) a[u.name] = 0;
  while (true) {
    visit(a);
    std::size_t i = 0;
    for (; i < cs.unknowns.size(); ++i) {
      Integer& v = a[cs.unknowns[i].name];
      if (v < bound) {
        ++v;
        break;
      }
      v = 0;
    }
    if (i == cs.unknowns.size()) return;
  }
}

std::string reply_file(const std::string& name, const std::string& content) {
  const std::string path = testing::temp_path(name);
  testing::write_file(path, content);
  return path;
}

}  // namespace

TEST_SUITE("smt") {
  TEST_CASE("shape names") {
    for (const char* n : {"poly-linear", "poly-multilinear-2", "matrix-1", "matrix-2", "matrix-4"})
      CHECK(Shape::parse(n).name() == n);
    CHECK_THROWS_AS(Shape::parse("matrix-5"), Error);
    CHECK_THROWS_AS(Shape::parse("poly"), Error);
  }

  TEST_CASE("random walk linear encoding") {
    const ConstraintSet cs = encode(load("rw34.wst"), Shape::parse("poly-linear"), 16);
    CHECK(unknown_names(cs) == std::vector<std::string>{"s.0", "s.1"});
    CHECK(cs.nonlinear);
    // Slope: 4*s1 - s1^2 >= 3. Constant: 3*s0 - s0*s1 >= 1.
    const UnknownPoly s0 = UnknownPoly::variable(0), s1 = UnknownPoly::variable(1);
    bool slope = false, constant = false;
    for (const Constraint& c : cs.constraints) {
      const UnknownPoly normal = c.expression - UnknownPoly(c.lower);
      if (normal == s1.scaled(4) - s1 * s1 - UnknownPoly(Integer(3))) slope = true;
      if (normal == s0.scaled(3) - s0 * s1 - UnknownPoly(Integer(1))) constant = true;
    }
    CHECK(slope);
    CHECK(constant);
    CHECK(satisfies(cs, {{"s.0", 1}, {"s.1", 1}}));
    CHECK(satisfies(cs, {{"s.0", 1}, {"s.1", 2}}));
    CHECK_FALSE(satisfies(cs, {{"s.0", 1}, {"s.1", 4}}));
    CHECK_FALSE(satisfies(cs, {{"s.0", 17}, {"s.1", 1}}));
  }

  TEST_CASE("point-mass rules give classic constraints") {
    const ConstraintSet cs = encode(system_of("f(x) -> x"), Shape::parse("poly-linear"), 16);
    CHECK_FALSE(cs.nonlinear);
    CHECK(satisfies(cs, {{"f.0", 1}, {"f.1", 1}}));
    CHECK_FALSE(satisfies(cs, {{"f.0", 0}, {"f.1", 1}}));
  }

  TEST_CASE("matrix encoding of the two-symbol example") {
    const ConstraintSet cs = encode(load("ab14.wst"), Shape::parse("matrix-2"), 16);
    CHECK(cs.nonlinear);
    CHECK(cs.unknowns.size() == 12);
    const Assignment printed{{"a.C1.1.1", 1}, {"a.C1.1.2", 1}, {"a.C1.2.1", 0}, {"a.C1.2.2", 0},
                           {"a.c.1", 0},    {"a.c.2", 1},    {"b.C1.1.1", 1}, {"b.C1.1.2", 0},
                           {"b.C1.2.1", 0}, {"b.C1.2.2", 0}, {"b.c.1", 0},    {"b.c.2", 0}};
    CHECK(unknown_names(cs) == [&] {
      std::vector<std::string> names;
      for (const auto& [k, v] : printed) names.push_back(k);
      return names;
    }());
    CHECK(satisfies(cs, printed));
    SolverModel model{printed};
    const auto interp = decode(cs, model);
    const auto check = check_certificate(interp, load("ab14.wst"));
    REQUIRE(check.accepted);
    CHECK(check.certificate->epsilon == q("1/2"));
  }

  TEST_CASE("degree overflow in the multilinear shape") {
    CHECK_THROWS_AS(encode(system_of("f(x,y) -> f(x,x)"), Shape::parse("poly-multilinear-2"), 4), Error);
    CHECK_NOTHROW(encode(system_of("f(x,y) -> f(x,x)"), Shape::parse("poly-linear"), 4));
  }

  TEST_CASE("emitted scripts are byte-stable") {
    for (const char* name : {"rw34.wst", "ab14.wst", "coin.wst"}) {
      for (const char* shape : {"poly-linear", "matrix-2"}) {
        const std::string a = emit_smtlib(encode(load(name), Shape::parse(shape), 16));
        const std::string b = emit_smtlib(encode(load(name), Shape::parse(shape), 16));
        CHECK(a == b);
        CHECK(a.find("(check-sat)\n(get-model)\n") != std::string::npos);
      }
    }
    const std::string golden = testing::slurp(testing::source_path("tests/data/rw34_poly_linear.smt2"));
    CHECK(emit_smtlib(encode(load("rw34.wst"), Shape::parse("poly-linear"), 16)) == golden);
    const std::string linear = emit_smtlib(encode(system_of("f(x) -> x"), Shape::parse("poly-linear"), 16));
    CHECK(linear.find("(set-logic QF_LIA)") != std::string::npos);
    CHECK(smt_symbol("0.0") == "|0.0|");
    CHECK(smt_symbol("s.1") == "s.1");
  }

  TEST_CASE("integer encoding agrees with the exact checker on small boxes") {
    struct Case {
      std::string rules;
      const char* shape;
      int bound;
    };
    const std::vector<Case> cases{
        {"s(x) -> 3 : x || 1 : s(s(x))", "poly-linear", 2},
        {"s(x) -> 1 : x || 3 : s(s(x))", "poly-linear", 2},
        {"s(x) -> 1 : x || 1 : s(s(x))", "poly-linear", 2},
        {"f(x) -> 1 : x || 1 : g(x)  g(x) -> x", "poly-linear", 2},
        {"f(x,y) -> 1 : x || 2 : g(y)  g(x) -> x", "poly-multilinear-2", 2},
        {"s(x) -> 3 : x || 1 : s(s(x))", "matrix-1", 2},
        {"a(a(x)) -> 1 : a(a(a(x))) || 3 : a(b(a(x)))", "matrix-1", 2},
    };
    for (const Case& c : cases) {
      const Ptrs sys = system_of(c.rules);
      const ConstraintSet cs = encode(sys, Shape::parse(c.shape), c.bound);
      std::size_t sat = 0;
      for_each_assignment(cs, c.bound, [&](const Assignment& a) {
        const bool encoded = satisfies(cs, a);
        const bool exact = check_certificate(decode(cs, SolverModel{a}), sys).accepted;
        if (encoded != exact) FAIL_CHECK(c.rules << " " << c.shape << ": encoding and checker disagree");
        sat += encoded;
      });
      if (c.rules.find("1 : x || 3") != std::string::npos || c.rules.find("1 : x || 1 : s") != std::string::npos)
        CHECK(sat == 0);
    }
  }

  TEST_CASE("solver output parsing") {
    auto r = parse_solver_output("sat\n(\n  (define-fun a () Int\n    3)\n  (define-fun |0.0| () Int (- 2))\n)\n");
    CHECK(r.status == SolverResult::Status::Sat);
    CHECK(r.model.assignment.at("a") == 3);
    CHECK(r.model.assignment.at("0.0") == -2);
    CHECK(parse_solver_output("unsat\n").status == SolverResult::Status::Unsat);
    CHECK(parse_solver_output("unknown\n").status == SolverResult::Status::Unknown);
    CHECK(parse_solver_output("(error \"boom\")\n").status == SolverResult::Status::Error);
    CHECK(parse_solver_output("").status == SolverResult::Status::Error);
    CHECK(parse_solver_output("sat\n((define-fun a () Int").status == SolverResult::Status::Error);
  }

  TEST_CASE("decoding") {
    const ConstraintSet cs = encode(load("rw34.wst"), Shape::parse("poly-linear"), 16);
    const auto interp = decode(cs, SolverModel{{{"s.0", 1}, {"s.1", 1}, {"0.0", 0}}});
    const auto& s = std::get<PolyInterpretation<Rational>>(interp).symbols.at("s");
    CHECK(s.coefficient({}) == 1);
    CHECK(s.coefficient({1}) == 1);
    const auto check = check_certificate(interp, load("rw34.wst"));
    REQUIRE(check.accepted);
    CHECK(check.certificate->epsilon == q("1/2"));

    CHECK_THROWS_AS(decode(cs, SolverModel{{{"s.0", 1}}}), Error);
    CHECK_THROWS_AS(decode(cs, SolverModel{{{"s.0", 1}, {"s.1", 40}}}), Error);
    CHECK_THROWS_AS(decode(cs, SolverModel{{{"s.0", -1}, {"s.1", 1}}}), Error);
  }

  TEST_CASE("fake solver process") {
    const std::string dump = testing::temp_path("dump.smt2");
    const auto r = run_solver("(check-sat)\n", testing::fake_solver(reply_file("sat.txt", "sat\n()\n"), "--dump '" + dump + "'"), 5s);
    CHECK(r.status == SolverResult::Status::Sat);
    CHECK(testing::slurp(dump) == "(check-sat)\n");

    CHECK(run_solver("", testing::fake_solver(reply_file("unsat.txt", "unsat\n")), 5s).status ==
          SolverResult::Status::Unsat);
    CHECK(run_solver("", "exit 3", 5s).status == SolverResult::Status::Error);
    CHECK(run_solver("", "echo garbage", 5s).status == SolverResult::Status::Error);
    CHECK(run_solver("", "/nonexistent/solver-binary", 5s).status == SolverResult::Status::Error);
  }

  TEST_CASE("timeouts and cancellation kill the solver") {
    const auto started = std::chrono::steady_clock::now();
    const auto r = run_solver("", "sleep 30; echo sat", 300ms);
    CHECK(r.status == SolverResult::Status::Unknown);
    CHECK(r.diagnostic == "timeout");
    CHECK(std::chrono::steady_clock::now() - started < 5s);

    std::stop_source stop;
    std::jthread canceller([&] {
      std::this_thread::sleep_for(200ms);
      stop.request_stop();
    });
    const auto c = run_solver("", "sleep 30", 20s, stop.get_token());
    CHECK(c.status == SolverResult::Status::Unknown);
    CHECK(c.diagnostic == "cancelled");
    CHECK(std::chrono::steady_clock::now() - started < 10s);
  }

  TEST_CASE("real solver round trips" * doctest::skip(!have_z3())) {
    auto sat = run_solver("(declare-const x Int)\n(assert (= x 1))\n(check-sat)\n(get-model)\n", "z3 -in", 10s);
    REQUIRE(sat.status == SolverResult::Status::Sat);
    CHECK(sat.model.assignment.at("x") == 1);
    auto unsat = run_solver("(declare-const x Int)\n(assert (and (< x 0) (>= x 0)))\n(check-sat)\n", "z3 -in", 10s);
    CHECK(unsat.status == SolverResult::Status::Unsat);

    const ConstraintSet empty{};
    auto e = run_solver(emit_smtlib(empty), "z3 -in", 10s);
    CHECK(e.status == SolverResult::Status::Sat);

    ConstraintSet box;
    box.unknowns = {{"u", 2}};
    box.constraints = {{UnknownPoly::variable(0), 1, "u >= 1"}};
    auto b = run_solver(emit_smtlib(box), "z3 -in", 10s);
    REQUIRE(b.status == SolverResult::Status::Sat);
    CHECK(b.model.assignment.at("u") >= 1);
    CHECK(b.model.assignment.at("u") <= 2);

    const ConstraintSet rw34 = encode(load("rw34.wst"), Shape::parse("poly-linear"), 16);
    auto r = run_solver(emit_smtlib(rw34), "z3 -in", 10s);
    REQUIRE(r.status == SolverResult::Status::Sat);
    CHECK(check_certificate(decode(rw34, r.model), load("rw34.wst")).accepted);

    const ConstraintSet rw12 = encode(load("rw12.wst"), Shape::parse("poly-linear"), 16);
    CHECK(run_solver(emit_smtlib(rw12), "z3 -in", 10s).status == SolverResult::Status::Unsat);
  }
}
