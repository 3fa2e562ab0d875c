#pragma once

// Backward proof search.
//
// The search is cut-free and complete for L, Lneck, Lcs and Lrev (cut is
// admissible there); axiom leaves are restricted to primitive p -> p, which
// does not change the derivable set.  Rotation is folded into rule
// application: at each node whose succedent permits rotation the searcher
// branches over all cyclic offsets of the antecedent and then requires a
// non-rotation rule, so consecutive rotations never occur and no visited-set
// is needed (every other backward step strictly shrinks the connective
// count).
//
// Under Lbrac the search additionally tries cuts whose cut formula is C^r
// with C in the subformula closure of the goal, spending at most cut_budget
// of them per branch; this is sound but not known to be complete.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "cyclam/proof.hpp"

namespace cyclam {

struct SearchConfig {
  SystemId system = SystemId::L;
  int cut_budget = 0;               // Lbrac only; must be 0 elsewhere
  std::size_t memo_limit = 8'000'000;  // entries; exceeding it is a hard error
};

// A memoizing searcher.  One instance is single-threaded; the memo persists
// across derive() calls, so batches of related queries share subproblems.
class Prover {
public:
  explicit Prover(SearchConfig cfg);

  // Returns a proof accepted by check_proof, or nullopt when the sequent has
  // no (budgeted) derivation.  Throws Error on fragment violations and when
  // memo_limit is exceeded.
  std::optional<ProofPtr> derive(const Sequent& s);
  bool derivable(const Sequent& s) { return derive(s).has_value(); }

  const SearchConfig& config() const { return cfg_; }
  std::size_t memo_size() const { return memo_.size() + core_memo_.size(); }
  void clear_memo();

private:
  struct Key {
    Sequent seq;
    int budget;
    bool operator==(const Key& o) const { return budget == o.budget && seq == o.seq; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return k.seq.hash() * 1315423911u + static_cast<std::size_t>(k.budget);
    }
  };

  std::optional<ProofPtr> search(const Sequent& s, int budget);
  std::optional<ProofPtr> core(const Sequent& s, int budget);
  bool rotation_eligible(const Sequent& s) const;
  void bump_memo();

  SearchConfig cfg_;
  std::unordered_map<Key, std::optional<ProofPtr>, KeyHash> memo_;       // search()
  std::unordered_map<Key, std::optional<ProofPtr>, KeyHash> core_memo_;  // core()
  std::vector<Formula> cut_formulas_;  // C^r over the goal's subformula closure
};

// One-shot convenience wrapper.
std::optional<ProofPtr> derive(const Sequent& s, const SearchConfig& cfg);
bool derivable(const Sequent& s, const SearchConfig& cfg);

// Deterministic, duplicate-free enumeration of the well-formed sequents of
// the system's fragment whose total size — connective count plus antecedent
// commas — is at most max_total_size.  Primitives come from `alphabet`; when
// max_formula_size >= 0 every single formula is also capped at that size.
std::vector<Sequent> enumerate_sequents(const std::vector<std::string>& alphabet,
                                        int max_total_size, SystemId system,
                                        int max_formula_size = -1);

}  // namespace cyclam
