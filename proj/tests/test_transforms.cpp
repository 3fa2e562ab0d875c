#include "cyclam/transforms.hpp"

#include "cyclam/formula.hpp"
#include "cyclam/search.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace cyclam;

namespace {

Formula F(const char* t) { return parse_formula(t); }

// The box expansion without the freshness guard, for building expected values
// that nest boxes (the public box() rejects its own output as input).
Formula box_raw(const Formula& f) {
  const Formula l = Formula::prim("__l");
  const Formula r = Formula::prim("__r");
  return Formula::over(Formula::under(l, Formula::prod(Formula::prod(l, f), r)), r);
}

bool proves(const Sequent& s, SystemId sys, int budget = 0) {
  Prover prover(SearchConfig{sys, budget});
  return prover.derive(s).has_value();
}

bool proves(const char* text, SystemId sys, int budget = 0) {
  return proves(parse_sequent(text), sys, budget);
}

}  // namespace

TEST_SUITE("transforms") {

TEST_CASE("fresh symbol pool names and ownership") {
  FreshSymbolPool pool;
  CHECK(pool.l == "__l");
  CHECK(pool.r == "__r");
  CHECK(pool.q(1) == "__q1");
  CHECK(pool.q(12) == "__q12");
  CHECK_THROWS_AS(pool.q(0), Error);

  CHECK(pool.owns("__l"));
  CHECK(pool.owns("__r"));
  CHECK(pool.owns("__q1"));
  CHECK(pool.owns("__q42"));
  CHECK_FALSE(pool.owns("p"));
  CHECK_FALSE(pool.owns("__x"));
  CHECK_FALSE(pool.owns("__q"));
  CHECK_FALSE(pool.owns("__q0"));
  CHECK_FALSE(pool.owns("__q01"));
  CHECK_FALSE(pool.owns("q1"));

  CHECK(has_reserved_symbols(F("(p * __q3)")));
  CHECK_FALSE(has_reserved_symbols(F("(p * q3)")));
}

TEST_CASE("generating maps reject reserved symbols in their input") {
  CHECK_THROWS_AS(box(F("__l")), Error);
  CHECK_THROWS_AS(box(F("(p * __q3)")), Error);
  CHECK_THROWS_AS(e_n(F("__r^c"), 1), Error);
  CHECK_THROWS_AS(o_n(F("__r^c"), 1), Error);
  CHECK_THROWS_AS(t_n(F("__q1"), 1), Error);
  // The erasing / embedding maps take any input names as-is.
  CHECK(unneck(F("__l^c")) == F("__l"));
  CHECK(cal_A(F("__l")) == F("__l"));
}

TEST_CASE("box expansion golden form") {
  const Formula bp = box(F("p"));
  CHECK(print_formula(bp) == "((__l \\ ((__l * p) * __r)) / __r)");
  CHECK(bp.size() == 4);
  CHECK(box(F("(q * p)")).size() == 5);
  // Round-trips through the parser.
  CHECK(parse_formula(print_formula(bp)) == bp);
}

TEST_CASE("box is an upper embedding: A -> box(A) but not back") {
  CHECK(proves(Sequent{{F("p")}, box(F("p"))}, SystemId::L));
  CHECK_FALSE(proves(Sequent{{box(F("p"))}, F("p")}, SystemId::L));
  // Monotone: from q*p -> (p*q)^c we get box(q*p) -> box((p*q)^c).
  const Formula a = F("(q * p)");
  const Formula b = F("(p * q)^c");
  REQUIRE(proves(Sequent{{a}, b}, SystemId::LNeck));
  CHECK(proves(Sequent{{box(a)}, box(b)}, SystemId::LNeck));
}

TEST_CASE("tower map goldens") {
  // One even shift becomes one box-shift step under e_1 ...
  CHECK(e_n(F("p^c"), 1) == Formula::shift(box(F("p"))));
  CHECK(print_formula(e_n(F("p^c"), 1)) == "((__l \\ ((__l * p) * __r)) / __r)^c");
  // ... and a plain box under o_1.
  CHECK(o_n(F("p^c"), 1) == box(F("p")));
  // Two stacked steps at N = 2.
  CHECK(e_n(F("p^c"), 2) == Formula::shift(box_raw(Formula::shift(box(F("p"))))));
  // Nesting must go through the raw builder: box() rejects its own output.
  CHECK_THROWS_AS(box(box(F("p"))), Error);
  // Shift-free formulas are fixed points.
  CHECK(e_n(F("p"), 3) == F("p"));
  CHECK(e_n(F("(q \\ (p * q))"), 3) == F("(q \\ (p * q))"));
  CHECK(o_n(F("p"), 0) == F("p"));
  // A denominator flips parity: under e_1 the odd p^c gets a bare box,
  // under o_1 it gets the tower.
  CHECK(e_n(F("p^c \\ q"), 2) == Formula::under(box(F("p")), F("q")));
  CHECK(o_n(F("p^c \\ q"), 2) ==
        Formula::under(Formula::shift(box_raw(Formula::shift(box(F("p"))))), F("q")));
}

TEST_CASE("tower maps enforce the size bound and fragment") {
  CHECK_THROWS_AS(e_n(F("p^c"), 0), Error);       // size 1 > N = 0
  CHECK_THROWS_AS(o_n(F("(p * q)^c"), 1), Error);  // size 2 > N = 1
  CHECK_THROWS_AS(e_n(F("p^r"), 5), Error);        // outside the ^c fragment
  CHECK_THROWS_AS(o_n(F("p^b"), 5), Error);
  CHECK_NOTHROW(e_n(F("(p * q)^c"), 2));
}

TEST_CASE("tower maps land in the advertised cyclicity classes") {
  testgen::FormulaGen gen(2026);
  gen.with_shift = true;
  const int N = 3;
  int shifted = 0;
  for (int i = 0; i < 200; ++i) {
    const Formula f = gen.gen(gen.pick(N + 1));
    const Formula e = e_n(f, N);
    const Formula o = o_n(f, N);
    CHECK(is_even_cyclic(e));
    CHECK(is_odd_cyclic(o));
    bool has_shift = false;
    visit_occurrences(f, [&](const Formula& g, Parity) {
      if (g.kind() == FKind::Shift) has_shift = true;
    });
    if (has_shift) ++shifted;
  }
  CHECK(shifted >= 40);  // the sample actually exercises the interesting case
}

TEST_CASE("tower maps preserve derivability on a small slice") {
  // o_N on antecedents, e_N on the succedent, N = 2; exhaustive over tiny
  // sequents with per-formula size <= 2.
  const int N = 2;
  auto universe = enumerate_sequents({"p", "q"}, 2, SystemId::LNeck, N);
  Prover plain(SearchConfig{SystemId::LNeck, 0});
  Prover mapped(SearchConfig{SystemId::LNeck, 0});
  int checked = 0;
  int derivable = 0;
  for (const Sequent& s : universe) {
    std::vector<Formula> lhs;
    lhs.reserve(s.lhs.size());
    for (const Formula& a : s.lhs) lhs.push_back(o_n(a, N));
    const Sequent t{std::move(lhs), e_n(s.rhs, N)};
    const bool d1 = plain.derive(s).has_value();
    const bool d2 = mapped.derive(t).has_value();
    CHECK_MESSAGE(d1 == d2, print_sequent(s), "  vs  ", print_sequent(t));
    ++checked;
    if (d1) ++derivable;
  }
  CHECK(checked > 1000);
  CHECK(derivable > 20);
}

TEST_CASE("shift erasure") {
  CHECK(unneck(F("(p^c * q)^c")) == F("(p * q)"));
  CHECK(print_formula(unneck(F("(p^c * q)^c"))) == "(p * q)");
  CHECK(unneck(F("p")) == F("p"));
  CHECK(unneck(F("((p^c / q^c) \\ r^c)")) == F("((p / q) \\ r)"));
  CHECK(unneck(F("p^c^c^c")) == F("p"));
  CHECK_THROWS_AS(unneck(F("p^r")), Error);
  CHECK_THROWS_AS(unneck(F("(p^b * q)")), Error);
  // Erasing the shifts of a tower image leaves pure box nesting.
  CHECK(unneck(e_n(F("p^c"), 2)) == box_raw(box(F("p"))));
}

TEST_CASE("division-product embedding goldens") {
  CHECK(cal_A(F("p")) == F("p"));
  CHECK(cal_S(F("p")) == F("p^c"));
  CHECK(print_formula(cal_A(F("s / q / p"))) == "((s / q^c) / p^c)");
  CHECK(cal_S(F("q \\ p")) == F("(q \\ p^c)^c"));
  CHECK(cal_S(F("p * q")) == F("(p^c * q^c)^c"));
  CHECK(cal_A(F("q \\ p")) == F("q^c \\ p"));
  CHECK(cal_A(F("p * q")) == F("p * q"));
  CHECK_THROWS_AS(cal_A(F("p^c")), Error);
  CHECK_THROWS_AS(cal_S(F("p^r")), Error);
  CHECK_THROWS_AS(cal_A(F("(p^c / q)")), Error);
}

TEST_CASE("division-product embedding matches the shift system on instances") {
  // q, p/q -> p needs the rotation rule and survives the embedding ...
  REQUIRE(proves("q, p / q -> p", SystemId::LCS));
  CHECK(proves(Sequent{{cal_A(F("q")), cal_A(F("p / q"))}, cal_S(F("p"))},
               SystemId::LNeck));
  // ... and an unprovable sequent stays unprovable.
  REQUIRE_FALSE(proves("q, p -> (q * q)", SystemId::LCS));
  CHECK_FALSE(proves(Sequent{{cal_A(F("q")), cal_A(F("p"))}, cal_S(F("(q * q)"))},
                     SystemId::LNeck));
}

TEST_CASE("division-product embedding preserves derivability on random sequents") {
  testgen::FormulaGen gen(77);
  gen.prims = {"p", "q"};
  Prover cs(SearchConfig{SystemId::LCS, 0});
  Prover neck(SearchConfig{SystemId::LNeck, 0});
  int agreed = 0;
  int derivable = 0;
  for (int i = 0; i < 100; ++i) {
    Sequent s = gen.gen_sequent(3, 2);
    int total = 0;
    for (const Formula& a : s.lhs) total += a.size();
    total += s.rhs.size();
    if (total > 5) continue;
    std::vector<Formula> lhs;
    for (const Formula& a : s.lhs) lhs.push_back(cal_A(a));
    const Sequent t{std::move(lhs), cal_S(s.rhs)};
    const bool d1 = cs.derive(s).has_value();
    const bool d2 = neck.derive(t).has_value();
    CHECK_MESSAGE(d1 == d2, print_sequent(s), "  vs  ", print_sequent(t));
    ++agreed;
    if (d1) ++derivable;
  }
  CHECK(agreed > 50);
  CHECK(derivable > 3);
}

TEST_CASE("rotation towers") {
  CHECK(t_n(F("p"), 0) == F("p"));
  CHECK(print_formula(t_n(F("p"), 1)) == "(__q1 * (p / __q1))");
  CHECK(print_formula(t_n(F("p"), 2)) == "(__q2 * ((__q1 * (p / __q1)) / __q2))");
  CHECK_THROWS_AS(t_n(F("p"), -1), Error);

  // Towers reach a shifted target: the rotation closes under ^c.
  CHECK(proves(Sequent{{t_n(F("p"), 1)}, F("p^c")}, SystemId::LNeck));
  CHECK(proves(Sequent{{t_n(F("p"), 2)}, F("p^c")}, SystemId::LNeck));
  CHECK(proves(Sequent{{t_n(F("p^c"), 2)}, F("p^c")}, SystemId::LNeck));
  // A primitive target is not rotation-closed, and the tower step is stuck.
  CHECK_FALSE(proves(Sequent{{t_n(F("p"), 1)}, F("p")}, SystemId::LNeck));
  CHECK_FALSE(proves(Sequent{{t_n(F("p"), 2)}, F("p")}, SystemId::LNeck));
}

TEST_CASE("shifted antecedents stay derivable against shifted targets") {
  // If A -> C^c holds then so does A^c -> C^c (single-antecedent shift rule).
  const char* cases[] = {"p -> p^c", "q * p -> (p * q)^c", "p^c -> p^c^c"};
  for (const char* c : cases) {
    Sequent s = parse_sequent(c);
    REQUIRE(proves(s, SystemId::LNeck));
    REQUIRE(s.lhs.size() == 1);
    CHECK(proves(Sequent{{Formula::shift(s.lhs[0])}, s.rhs}, SystemId::LNeck));
  }
}

}  // TEST_SUITE
