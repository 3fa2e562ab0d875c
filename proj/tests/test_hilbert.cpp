#include "cyclam/formula.hpp"
#include "cyclam/hilbert.hpp"
#include "cyclam/proof.hpp"
#include "cyclam/search.hpp"
#include "doctest.h"

using namespace cyclam;

namespace {
Sequent S(const char* t) { return parse_sequent(t); }

// Translate a sequent-style proof and insist the result checks out and
// proves fold(antecedent) -> succedent.
void translates(const char* text) {
  Prover prover(SearchConfig{SystemId::LNeck});
  const Sequent s = parse_sequent(text);
  auto proof = prover.derive(s);
  REQUIRE_MESSAGE(proof, "expected derivable: ", text);
  auto steps = to_hilbert(*proof);
  REQUIRE(!steps.empty());
  auto res = check_hilbert_proof(steps);
  REQUIRE_MESSAGE(res.ok, text, " / step ", res.bad_step, ": ", res.message);
  const Sequent want{{product_fold(s.lhs)}, s.rhs};
  CHECK(steps.back().seq == want);
}
}  // namespace

TEST_SUITE("hilbert") {

TEST_CASE("product_fold is right-nested") {
  auto f = product_fold({parse_formula("p"), parse_formula("q"), parse_formula("r")});
  CHECK(print_formula(f) == "(p * (q * r))");
  CHECK(product_fold({parse_formula("p")}) == parse_formula("p"));
}

TEST_CASE("axioms and rules check step by step") {
  std::vector<HilbertStep> good = {
      {S("p * q -> p * q"), RuleId::HAxId, {}},
      {S("p * q -> (p * q)^c"), RuleId::HAxNeck, {}},
      {S("q * p -> (p * q)^c"), RuleId::HNeckRot, {1}},
  };
  auto res = check_hilbert_proof(good);
  CHECK_MESSAGE(res.ok, "step ", res.bad_step, ": ", res.message);

  std::vector<HilbertStep> assoc = {
      {S("p * (q * r) -> (p * q) * r"), RuleId::HAxAssoc, {}},
      {S("(p * q) * r -> p * (q * r)"), RuleId::HAxAssoc, {}},
  };
  CHECK(check_hilbert_proof(assoc).ok);

  std::vector<HilbertStep> curry = {
      {S("p * q -> p * q"), RuleId::HAxId, {}},
      {S("p -> (p * q) / q"), RuleId::HCurry, {0}},
      {S("q -> p \\ (p * q)"), RuleId::HCurry, {0}},
      {S("p * q -> p * q"), RuleId::HUncurry, {1}},
  };
  CHECK(check_hilbert_proof(curry).ok);

  std::vector<HilbertStep> trans = {
      {S("p -> p"), RuleId::HAxId, {}},
      {S("p -> p^c"), RuleId::HAxNeck, {}},
      {S("p^c -> p^c^c"), RuleId::HAxNeck, {}},
      {S("p -> p^c^c"), RuleId::HTrans, {1, 2}},
      {S("p^c -> p^c^c"), RuleId::HNeckMono, {3}},
  };
  CHECK(check_hilbert_proof(trans).ok);
}

TEST_CASE("bad steps are pinpointed") {
  // a forward reference
  std::vector<HilbertStep> fwd = {
      {S("p -> p^c"), RuleId::HTrans, {0, 1}},
      {S("p -> p"), RuleId::HAxId, {}},
  };
  auto res = check_hilbert_proof(fwd);
  CHECK_FALSE(res.ok);
  CHECK(res.bad_step == 0);

  // a sequent-calculus rule does not belong here
  std::vector<HilbertStep> alien = {{S("p -> p"), RuleId::Ax, {}}};
  CHECK_FALSE(check_hilbert_proof(alien).ok);

  // combinatorial antecedents must be single types
  std::vector<HilbertStep> wide = {{S("p, q -> p"), RuleId::HAxId, {}}};
  CHECK_FALSE(check_hilbert_proof(wide).ok);

  // a wrong neck-rotation split
  std::vector<HilbertStep> rot = {
      {S("p * q -> (p * q)^c"), RuleId::HAxNeck, {}},
      {S("p * q -> (p * q)^c"), RuleId::HNeckRot, {0}},
  };
  auto r2 = check_hilbert_proof(rot);
  CHECK_FALSE(r2.ok);
  CHECK(r2.bad_step == 1);
}

TEST_CASE("sequent proofs compile to combinator form") {
  translates("p -> p");
  translates("p^c^c -> p^c");
  translates("p^c -> p^c^c");
  translates("q * p -> (p * q)^c");
  translates("(q * p)^c -> (p * q)^c");
  translates("(p * q)^c -> (q * p)^c");
  translates("q \\ p^c -> p^c / q");
  translates("p^c / q -> q \\ p^c");
  translates("p -> q^c / (q^c / p)");
  // division left rules with non-trivial contexts
  translates("p, p \\ q -> q");
  translates("q / p, p -> q");
  translates("s, p, p \\ (s \\ q) -> q");
  translates("q / p, p, q \\ s -> s");
  translates("p * (q * s) -> (p * q) * s");
  translates("(p * q) * s -> p * (q * s)");
  translates("p, q, s -> (p * q) * s");
  translates("p -> q \\ (q * p)");
}

TEST_CASE("every small derivable sequent translates") {
  Prover prover(SearchConfig{SystemId::LNeck});
  int translated = 0;
  for (const auto& s : enumerate_sequents({"p", "q"}, 3, SystemId::LNeck)) {
    auto proof = prover.derive(s);
    if (!proof) continue;
    auto steps = to_hilbert(*proof);
    auto res = check_hilbert_proof(steps);
    CHECK_MESSAGE(res.ok, print_sequent(s), " / step ", res.bad_step, ": ",
                  res.message);
    CHECK(steps.back().seq == Sequent{{product_fold(s.lhs)}, s.rhs});
    ++translated;
  }
  CHECK(translated > 200);
}

}  // TEST_SUITE
