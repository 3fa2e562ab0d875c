// Categorial grammars over the supported sequent systems: membership and
// language enumeration through the prover, import of right-linear grammars,
// brute-force permutation-closure oracles, and the grammar-level
// transformations (evenize, shift erasure, division-product embedding).
#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cyclam/formula.hpp"
#include "cyclam/proof.hpp"

namespace cyclam {

// A word is a sequence of alphabet symbols; symbols may be multi-character.
using Word = std::vector<std::string>;

struct Grammar {
  SystemId system = SystemId::L;
  Formula distinguished;
  // A symbol may carry several types.  The stored order (file order) fixes
  // the assignment enumeration order of member(), making witnesses
  // deterministic.
  std::vector<std::pair<std::string, Formula>> lexicon;

  std::set<std::string> alphabet() const;
  std::vector<Formula> types_for(const std::string& symbol) const;
};

// Line-based text format: `system: <name>`, `start: <formula>`, then lines
// `<symbol> : <formula>`; blank lines and `#` comments are skipped.
Grammar parse_grammar(const std::string& text);
std::string print_grammar(const Grammar& g);

struct MemberWitness {
  std::vector<Formula> assignment;
  ProofPtr proof;
};

// True iff some lexicon assignment T1,...,Tn makes T1,...,Tn -> distinguished
// derivable.  Assignments are enumerated lexicographically (leftmost word
// position most significant, types in lexicon order); the first hit is
// reported.  Languages contain nonempty words only: an empty word or a symbol
// without lexicon entries is an error.
bool member(const Grammar& g, const Word& word, MemberWitness* witness = nullptr,
            int cut_budget = 0);

// Exactly { w : 1 <= |w| <= max_len, member(g, w) }, in shortlex order.
std::vector<Word> enumerate_language(const Grammar& g, int max_len,
                                     int cut_budget = 0);

struct RightLinearGrammar {
  struct Production {
    std::string lhs;
    std::string terminal;
    std::string next;  // empty for X -> a
  };
  std::string start;
  std::vector<Production> productions;
};

// Text format: `start: <nonterminal>`, then lines `X -> a Y` or `X -> a`;
// blank lines and `#` comments are skipped.  Any other production shape is
// an error.
RightLinearGrammar parse_right_linear(const std::string& text);

// The standard categorial encoding: X -> a Y contributes a |> x/y and
// X -> a contributes a |> x, one fresh primitive per nonterminal (lowercased
// name, "_nt" appended while it collides with a terminal or an earlier
// primitive); the distinguished type is the start primitive.  The resulting
// grammar, read under L, recognizes the language of rl.
Grammar import_right_linear(const RightLinearGrammar& rl);

// Words derived by rl itself, up to max_len, in shortlex order.
std::vector<Word> rl_language(const RightLinearGrammar& rl, int max_len);

// rl_language closed under all per-word symbol permutations.
std::vector<Word> perm_closure_oracle(const RightLinearGrammar& rl, int max_len);

// For a sequent p1/q1, ..., p_{n-1}/q_{n-1}, p_n -> s over primitives:
// searches for a permutation sigma of the division positions (0-based
// indices) that chains them: num(sigma(1)) = s, den(sigma(i)) =
// num(sigma(i+1)), den(sigma(n-1)) = p_n.  Such a chain exists whenever the
// sequent is derivable with the rotation rule, and the permuted sequent is
// then derivable without it.  Throws on any other sequent shape.
std::optional<std::vector<int>> lemma1_check(const Sequent& s);

// Replace every lexicon type T by o_N(T) and the distinguished type S by
// e_N(S), with N the maximal size over the toolbox and S.  The result is
// even-cyclic (shifts occur only where succedents can carry them) and
// recognizes the same language.  Requires a grammar under Lneck.
Grammar evenize_grammar(const Grammar& g);

// Erase every shift connective; the result is read under L.
Grammar unneck_grammar(const Grammar& g);

// The division-product embedding: lexicon through cal_A, distinguished type
// through cal_S, result read under Lneck.  A grammar under L or Lcs with
// shift-free types is accepted; the image recognizes the same language as
// the input grammar read under Lcs.
Grammar cs_embed_grammar(const Grammar& g);

}  // namespace cyclam
