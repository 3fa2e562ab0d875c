#pragma once

// Regular-language semantics: formulas denote languages given an assignment
// of a regular language to each primitive.
//
//   w(den \ num) = { u : for all v in w(den), vu in w(num) }
//   w(num / den) = { u : for all v in w(den), uv in w(num) }
//   w(A * B)     = { uv : u in w(A), v in w(B) }
//   w(A^c)       = { vu : uv in w(A) }              (cyclic shift)
//   w(A^r)       = { reverse(u) : u in w(A) }
//   w(A^b)       = w(A)^c  union  (w(A)^r)^c        (bracelet)
//
// A sequent A1,...,An -> B holds when w(A1)...w(An) is a subset of w(B).
// Languages are carried as nondeterministic finite automata; every language
// question (inclusion, equivalence, emptiness) is decided exactly.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <cyclam/formula.hpp>

namespace cyclam {

// Hard ceiling on the number of states any determinization may produce.
inline constexpr int kStateLimit = 10'000;

// A nondeterministic finite automaton.  States are 0..states-1; several
// initial states are allowed; delta entries are (from, symbol index, to)
// with the symbol index pointing into `alphabet`.  `make_automaton`
// validates and normalizes (alphabet sorted, lists deduplicated); the
// language operations below assume normalized inputs.
struct Automaton {
  std::vector<std::string> alphabet;
  int states = 0;
  std::vector<int> initial;
  std::vector<int> accepting;
  std::vector<std::array<int, 3>> delta;

  bool operator==(const Automaton& o) const = default;
};

Automaton make_automaton(std::vector<std::string> alphabet, int states,
                         std::vector<int> initial, std::vector<int> accepting,
                         std::vector<std::array<int, 3>> delta);

// The finite language consisting exactly of `words` (symbols must belong to
// the alphabet; the empty word is allowed).
Automaton finite_automaton(const std::vector<std::string>& alphabet,
                           const std::vector<std::vector<std::string>>& words);
Automaton universal_automaton(std::vector<std::string> alphabet);  // Sigma*
Automaton empty_automaton(std::vector<std::string> alphabet);      // {}

bool accepts(const Automaton& a, const std::vector<std::string>& word);
bool lang_empty(const Automaton& a);

// All accepted words of length <= max_len in shortlex order (the empty word
// first when accepted).
std::vector<std::vector<std::string>> enumerate_words(const Automaton& a,
                                                      int max_len);

// Language operations.  All binary operations require equal (normalized)
// alphabets and throw Error on mismatch.
Automaton lang_concat(const Automaton& a, const Automaton& b);
Automaton lang_union(const Automaton& a, const Automaton& b);
Automaton lang_reverse(const Automaton& a);
Automaton lang_cyclic_shift(const Automaton& a);

// Residuals.  lang_left_residual(b, a) is den\num with den=b, num=a; the
// result accepts u iff vu in L(a) for every v in L(b).  When L(b) is empty
// the quantifier is vacuous and the result is the universal language; the
// optional flag reports that situation.  lang_right_residual(a, b) is the
// mirror image a/b.
Automaton lang_left_residual(const Automaton& b, const Automaton& a,
                             bool* vacuous = nullptr);
Automaton lang_right_residual(const Automaton& a, const Automaton& b,
                              bool* vacuous = nullptr);

// Complete deterministic automaton for the same language (single initial
// state, total transition function).  Throws Error past kStateLimit states.
Automaton determinize(const Automaton& a);
// Minimal complete deterministic automaton (determinize, then partition
// refinement).
Automaton minimize(const Automaton& a);

// Shortest word in L(a) \ L(b), if any (exact decision procedure).
std::optional<std::vector<std::string>> lang_difference_witness(
    const Automaton& a, const Automaton& b);
bool lang_subset(const Automaton& a, const Automaton& b);  // L(a) <= L(b)
bool lang_equivalent(const Automaton& a, const Automaton& b);

// JSON form: {"alphabet":[...], "states":n, "initial":[...],
// "accepting":[...], "delta":[[from,"symbol",to],...]}.
std::string automaton_to_json(const Automaton& a, int indent = -1);
Automaton automaton_from_json(const std::string& text);

// Whether primitive assignments may contain the empty word.  The default
// mirrors the calculus's nonempty-word discipline; composite languages (in
// particular residuals) may contain the empty word in either mode.
enum class EpsilonMode : std::uint8_t { Forbid, Allow };

std::string_view epsilon_mode_name(EpsilonMode mode);  // "forbid" / "allow"

struct Interpretation {
  std::map<std::string, Automaton> primitives;
  EpsilonMode epsilon_mode = EpsilonMode::Forbid;
};

// Throws Error unless all assigned automata share one alphabet and, in
// forbid mode, none accepts the empty word.
void validate_interpretation(const Interpretation& m);

// Compositional evaluation; throws Error on a primitive without an
// assignment.  `vacuous` (when given) is set to true if any residual along
// the way had an empty divisor language.
Automaton interpret(const Formula& f, const Interpretation& m,
                    bool* vacuous = nullptr);
bool holds(const Sequent& s, const Interpretation& m, bool* vacuous = nullptr);

// Random search for a falsifying interpretation.  Draws `samples` random
// assignments of automata with at most max_states states over the given
// alphabet and returns the first one in which the sequent fails; the draw
// sequence is a pure function of the seed.  Absence of a countermodel is
// reported as std::nullopt and proves nothing.
struct CountermodelConfig {
  int max_states = 2;
  std::vector<std::string> alphabet{"a", "b"};
  int samples = 500;
  std::uint32_t seed = 0;
  EpsilonMode epsilon_mode = EpsilonMode::Forbid;
};

std::optional<Interpretation> countermodel_search(
    const Sequent& s, const CountermodelConfig& cfg = {});

}  // namespace cyclam
