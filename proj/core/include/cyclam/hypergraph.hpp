#pragma once

// Hypergraph calculus over ranked types.
//
// Data model: a hypergraph is a set of nodes 0..node_count-1, a list of
// hyperedges (each with an attachment node sequence and a type label whose
// rank equals the attachment length), and a sequence of pairwise-distinct
// external nodes.  Every hypergraph obeys the no-isolated-nodes discipline:
// each node occurs in some attachment sequence.  Types are primitives p#k of
// a fixed rank, divisions N / D where D is a hypergraph with exactly one
// placeholder ($k) edge and rank(D) = rank(N), and products x(M) over a fully
// labeled hypergraph; the placeholder kind appears only inside a division's
// denominator.
//
// The calculus has one axiom, p-bullet -> p, and four rules: divisions are
// introduced on the right by plugging the antecedent into the denominator's
// placeholder, and on the left by carving the denominator's image out of the
// antecedent; products are unfolded on the left and assembled on the right by
// decomposing the antecedent along the body graph.  Backward search is
// cut-free and terminates: every backward step strictly decreases the total
// label size plus succedent size.  Cut is admissible; hl_cut_compose builds
// composed endsequents for testing that.
//
// tr() translates /, \, *, ^r and ^b formulas into rank-2 types; ^b becomes
// neck_h(t) = x(Loop(t)) / Loop($2).  Deciding a ^r/^b sequent by translating
// it and running the hypergraph search (lbrac_decide) is exact, unlike the
// bounded-cut sequent searcher.  ^c is rejected unless the experimental
// allow_shift flag is set: cycles can be unglued flipped as well as rotated,
// so the translation of ^c overshoots it (that is what ^b captures).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cyclam/formula.hpp"
#include "cyclam/proof.hpp"  // CheckResult

namespace cyclam {

enum class HlKind : std::uint8_t { HPrim, HDiv, HTimes, HDollar };

std::string_view hl_kind_name(HlKind k);

struct HlNode;
struct Hypergraph;

// Immutable shared handle; equality is up to isomorphism of embedded graphs.
class HlType {
 public:
  HlType() = default;  // empty handle; using it is an error

  static HlType prim(std::string name, int rank = 2);
  static HlType dollar(int rank);
  // N / D.  D must contain exactly one $-edge and satisfy rank(D) = rank(N);
  // the resulting rank is the $-edge's rank.
  static HlType divide(HlType numerator, Hypergraph denominator);
  // x(M).  M must be fully labeled by proper types; the rank is M's rank.
  static HlType times(Hypergraph body);

  HlKind kind() const;
  bool is(HlKind k) const { return kind() == k; }
  int rank() const;
  // |p| = 1; |N / D| = |N| + sum of D's non-$ label sizes + 1;
  // |x(M)| = sum of M's label sizes + 1.  Placeholders have size 0.
  int size() const;
  const std::string& prim_name() const;   // HPrim
  const HlType& numerator() const;        // HDiv
  const Hypergraph& denominator() const;  // HDiv
  int dollar_edge() const;                // HDiv: index of the $-edge
  const Hypergraph& body() const;         // HTimes

  // Canonical text form; two types are interchangeable in the calculus
  // exactly when their keys are equal.  Doubles as the printed syntax.
  const std::string& key() const;

  bool operator==(const HlType& o) const { return key() == o.key(); }
  bool operator!=(const HlType& o) const { return !(*this == o); }
  explicit operator bool() const { return node_ != nullptr; }

 private:
  explicit HlType(std::shared_ptr<const HlNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const HlNode> node_;
};

struct HlEdge {
  std::vector<int> att;  // attachment nodes; length equals the label's rank
  HlType label;
};

struct Hypergraph {
  int node_count = 0;
  std::vector<HlEdge> edges;
  std::vector<int> ext;  // pairwise-distinct node ids; its length is the rank
};

struct HlSequent {
  Hypergraph lhs;
  HlType rhs;
};

// ---------------------------------------------------------------------------
// Validation

int graph_rank(const Hypergraph& g);  // = ext length
bool wi_ok(const Hypergraph& g);      // every node occurs in some attachment

// Checks node ranges, rank(label) == attachment length, distinct ext, the
// no-isolated-nodes discipline (unless allow_isolated), and that placeholder
// labels appear only where allowed (max_dollars of them).
void validate_graph(const Hypergraph& g, bool allow_isolated = false,
                    int max_dollars = 0);
// validate_graph on the antecedent (no placeholders), plus rank agreement
// between the two sides.
void validate_sequent(const HlSequent& s, bool allow_isolated = false);

// ---------------------------------------------------------------------------
// Constructions

Hypergraph bullet(const HlType& t);  // rank(t) fresh nodes, all external
// String graph: n+1 nodes in a chain, edge i runs from node i-1 to node i,
// ext = first and last node.  Labels must have rank 2.
Hypergraph sg(const std::vector<HlType>& word);
Hypergraph flipped_sg(const std::vector<HlType>& word);  // sg with ext reversed
// One node, one rank-2 edge attached to it twice, no external nodes.
Hypergraph loop_graph(const HlType& t);
// sg(word) with the two endpoints fused: a directed cycle, no external nodes.
Hypergraph cycle_graph(const std::vector<HlType>& word);
// neck_h(t) = x(Loop(t)) / Loop($2); t must have rank 2.
HlType neck_h(const HlType& t);

// Replace edge `e` of g by h: e is removed, a copy of h is added, and the
// i-th external node of h is fused with the i-th attachment node of e.
// Requires rank(h) == attachment length of e.
Hypergraph replace(const Hypergraph& g, int edge, const Hypergraph& h);

// ---------------------------------------------------------------------------
// Isomorphism

// Canonical form under label- , attachment- and ext-preserving isomorphism;
// node numbering is chosen by signature refinement with backtracking, so the
// key is deterministic.  Doubles as the printed form of a graph.
std::string canonical_key(const Hypergraph& g);
bool iso(const Hypergraph& g, const Hypergraph& h);

std::string print_hl_type(const HlType& t);
std::string print_hl_sequent(const HlSequent& s);

// ---------------------------------------------------------------------------
// Translation from formulas (fragment: /, \, *, ^r, ^b)

// tr(p) = p#2;  tr(A/B) = tr(A) / sg($2 tr(B));  tr(B\A) = tr(A) / sg(tr(B) $2);
// tr(A*B) = x(sg(tr(A) tr(B)));  tr(A^r) = x(single tr(A)-edge, ext reversed);
// tr(A^b) = neck_h(tr(A)).  ^c is an error unless allow_shift is set, in
// which case it is translated like ^b (experimental; see the header comment).
HlType tr(const Formula& f, bool allow_shift = false);
HlSequent tr_sequent(const Sequent& s, bool allow_shift = false);

// ---------------------------------------------------------------------------
// Decomposition (shared backward-search machinery)

// All ways of writing k as pattern[m_1/H_1]...[m_l/H_l]: an injective node
// map of the pattern into k that matches the external sequences, a partition
// of k's edges into one block per pattern edge, and an "ungluing" choice at
// every repeated attachment position.  Pieces are returned in pattern-edge
// order; pattern labels are ignored.  Each piece has distinct external nodes
// and, unless allow_isolated, no isolated nodes.  Decompositions whose piece
// tuples coincide up to isomorphism are reported once.
struct Decomposition {
  std::vector<Hypergraph> pieces;
};
std::vector<Decomposition> match_pattern(const Hypergraph& k,
                                         const Hypergraph& pattern,
                                         bool allow_isolated = false);

// ---------------------------------------------------------------------------
// Proofs and search

enum class HlRuleId : std::uint8_t { HlAx, HlDivL, HlDivR, HlTimesL, HlTimesR };
std::string_view hl_rule_name(HlRuleId r);

struct HlProofNode;
using HlProofPtr = std::shared_ptr<const HlProofNode>;

struct HlProofNode {
  HlSequent conclusion;
  HlRuleId rule;
  // HlTimesL: index of the expanded x-edge in conclusion.lhs.
  // HlDivL: index, in premises[0].lhs, of the fresh edge that the carved-out
  // division region contracts to.  -1 otherwise.  For HlDivL the checker
  // treats this as a hint only: premises may conclude in an edge-permuted
  // isomorph, so every candidate position is tried if the hint fails.
  int edge = -1;
  std::vector<HlProofPtr> premises;
};

HlProofPtr make_hl_proof(HlSequent conclusion, HlRuleId rule,
                         std::vector<HlProofPtr> premises = {}, int edge = -1);

// Figure-exact checking: each node's conclusion must be isomorphic to the
// sequent its rule computes from its premises.
CheckResult check_hl_proof(const HlProofPtr& p, bool allow_isolated = false);

struct HlSearchConfig {
  int node_limit = 24;            // per-sequent antecedent nodes; hard error
  std::size_t memo_limit = 500'000;  // canonical-key entries; hard error
  bool allow_isolated = false;    // experimental: relax the WI discipline
};

class HlProver {
 public:
  explicit HlProver(HlSearchConfig cfg = {});
  ~HlProver();
  HlProver(HlProver&&) noexcept;
  HlProver& operator=(HlProver&&) noexcept;

  // Returns a proof accepted by check_hl_proof whose conclusion is isomorphic
  // to s, or nullopt when s is not derivable.  Throws Error on invalid input
  // and when node_limit or memo_limit is exceeded.
  std::optional<HlProofPtr> derive(const HlSequent& s);
  bool derivable(const HlSequent& s) { return derive(s).has_value(); }

  const HlSearchConfig& config() const;
  std::size_t memo_size() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::optional<HlProofPtr> hl_derive(const HlSequent& s,
                                    const HlSearchConfig& cfg = {});

// Decide a ^r/^b-fragment sequent by translating it and searching.
bool lbrac_decide(const Sequent& s, const HlSearchConfig& cfg = {});

// Composed endsequent right.lhs[e0 / left.lhs] -> right.rhs.  Both proofs
// must check, e0 must be a valid edge index of right's antecedent, and its
// label must equal left's succedent.  Admissibility of cut says the result
// is derivable again; hl_derive is the oracle for that.
HlSequent hl_cut_compose(const HlProofPtr& left, const HlProofPtr& right,
                         int e0);

// ---------------------------------------------------------------------------
// Input / output

// File format (JSON): {"graphs": {name: graph, ...},
//                      "sequent": {"lhs": "@name" | graph, "rhs": type-string}}
// where graph = {"nodes": [ids], "edges": [{"id": str, "att": [node ids],
// "label": type-string}], "ext": [node ids]} with arbitrary distinct integer
// node ids, and type-string uses the grammar
//   type  := atom ('div' '@'name)*
//   atom  := 'times' '@'name | '(' type ')' | '$'rank | name('#'rank)?
// (a bare primitive name means rank 2).  References name entries of "graphs".
HlSequent hl_sequent_from_json(const std::string& text);
std::string hl_sequent_to_json(const HlSequent& s, int indent = 2);

std::string hypergraph_to_dot(const Hypergraph& g);

}  // namespace cyclam
