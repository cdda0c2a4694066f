#include <doctest.h>

#include <random>

#include "ptrs/error.hpp"
#include "ptrs/simulator.hpp"
#include "support.hpp"

using namespace ptrs;
using testing::T;

namespace {

// Random term over f/2, g/1, a/0, b/0 and the variables x, y.
Term random_open_term(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 5);
  switch (pick(rng)) {
    case 0: return Term::variable("x");
    case 1: return Term::variable("y");
    case 2: return Term::apply("a");
    case 3: return Term::apply("b");
    case 4: return Term::apply("g", {random_open_term(rng, depth - 1)});
    default: return Term::apply("f", {random_open_term(rng, depth - 1), random_open_term(rng, depth - 1)});
  }
}

}  // namespace

TEST_SUITE("term") {
  TEST_CASE("printing uses applicative syntax with bare constants") {
    CHECK(to_string(T("f(a,g(b))")) == "f(a,g(b))");
    CHECK(to_string(T("0")) == "0");
    CHECK(to_string(T("x")) == "x");
    CHECK(T("s(s(0))").size() == 3);
    CHECK(T("s(s(0))").depth() == 3);
  }

  TEST_CASE("apply_substitution") {
    CHECK(apply_substitution(T("x"), {{"x", T("s(0)")}}) == T("s(0)"));
    CHECK(apply_substitution(T("s(x)"), {}) == T("s(x)"));
    CHECK(apply_substitution(T("f(x,x)"), {{"x", T("g(y)")}}) == T("f(g(y),g(y))"));
    CHECK(apply_substitution(T("y"), {{"x", T("a")}}) == T("y"));
  }

  TEST_CASE("replace_at") {
    CHECK(replace_at(T("s(f(0))"), {1}, T("x")) == T("s(x)"));
    CHECK(replace_at(T("s(f(0))"), {}, T("a")) == T("a"));
    CHECK(replace_at(T("s(f(s(0)))"), {1, 1}, T("0")) == T("s(f(0))"));
    CHECK_THROWS_AS(replace_at(T("s(0)"), {2}, T("a")), Error);
    CHECK_THROWS_AS(replace_at(T("s(0)"), {1, 1}, T("a")), Error);
    try {
      replace_at(T("s(0)"), {0}, T("a"));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidPosition);
    }
  }

  TEST_CASE("subterm_positions in pre-order") {
    CHECK(subterm_positions(T("x")) == std::vector<Position>{{}});
    CHECK(subterm_positions(T("s(0)")) == std::vector<Position>{{}, {1}});
    CHECK(subterm_positions(T("f(a,g(b))")) == std::vector<Position>{{}, {1}, {2}, {2, 1}});
  }

  TEST_CASE("match") {
    auto m = match(T("s(x)"), T("s(0)"));
    REQUIRE(m);
    CHECK(*m == Substitution{{"x", T("0")}});
    CHECK_FALSE(match(T("s(x)"), T("0")));
    CHECK_FALSE(match(T("f(x,x)"), T("f(0,s(0))")));
    CHECK(match(T("f(x,x)"), T("f(s(0),s(0))")));
    CHECK_FALSE(match(T("f(x,y)"), T("g(a)")));
  }

  TEST_CASE("signature arities are consistent") {
    Signature sig;
    sig.declare("f", 2);
    sig.declare("f", 2);
    CHECK(sig.arity("f") == 2u);
    CHECK_FALSE(sig.arity("g"));
    CHECK_THROWS_AS(sig.declare("f", 1), Error);
  }

  TEST_CASE("structural properties on random terms") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
      const Term t = random_open_term(rng, 4);
      const Substitution sigma{{"x", random_open_term(rng, 2)}, {"y", random_open_term(rng, 2)}};
      const Term image = apply_substitution(t, sigma);

      // Homomorphism at the root.
      if (!t.is_variable()) {
        std::vector<Term> args;
        for (const Term& a : t.args()) args.push_back(apply_substitution(a, sigma));
        CHECK(image == Term::apply(t.name(), args));
      }

      // Match/apply round trip.
      auto m = match(t, image);
      REQUIRE(m);
      CHECK(apply_substitution(t, *m) == image);

      // Positions count the nodes; read-then-write is the identity.
      const auto positions = subterm_positions(t);
      CHECK(positions.size() == t.size());
      for (const Position& p : positions) CHECK(replace_at(t, p, subterm_at(t, p)) == t);

      CHECK(parse_term(to_string(t), {"x", "y"}) == t);
    }
  }
}
