#pragma once

// Proof objects for the sequent systems: rule identifiers, derivation trees,
// a figure-exact checker, JSON (de)serialization, LaTeX rendering, and cut
// composition for building test instances.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cyclam/formula.hpp"

namespace cyclam {

enum class RuleId : std::uint8_t {
  // sequent rules
  Ax, UnderL, UnderR, OverL, OverR, ProdL, ProdR,
  NeckR, NeckL, NeckRot, CS,
  RevRev, RevRevL, RevRevR,
  BracR, BracL, BracRot, AxRevBrac,
  Cut,
  // doubled figures (check-only, never searched)
  OverL2, UnderOverL2, ProdR2, ProdL2,
  // Hilbert-style rules (used by check_hilbert_proof step lists)
  HAxId, HAxAssoc, HAxNeck, HCurry, HUncurry, HTrans, HNeckMono, HNeckRot
};

std::string_view rule_name(RuleId r);
std::optional<RuleId> rule_from_name(std::string_view name);

struct ProofNode;
using ProofPtr = std::shared_ptr<const ProofNode>;

struct ProofNode {
  Sequent conclusion;
  RuleId rule;
  // Rotation offset for NeckRot/BracRot/CS (premise antecedent is the
  // conclusion's rotated left by `offset`), or the cut-formula position for
  // Cut nodes; -1 when not applicable / not recorded.
  int offset = -1;
  std::vector<ProofPtr> premises;
};

ProofPtr make_proof(Sequent conclusion, RuleId rule,
                    std::vector<ProofPtr> premises = {}, int offset = -1);

struct CheckResult {
  bool ok = true;
  std::string message;    // empty when ok
  std::vector<int> path;  // premise indices from the root to the failing node

  explicit operator bool() const { return ok; }
};

struct CheckOptions {
  // Cut nodes are always legal under LBrac; elsewhere only when this is set
  // (cut-composition tests).
  bool allow_cut = false;
  // Doubled left/right figures; they belong to a modified ^c system and are
  // accepted under LNeck only.
  bool allow_doubled = true;
};

// Validates that every node of the tree instantiates its rule figure exactly,
// including side conditions (rotation needs a ^c/^b-headed succedent outside
// LCS, premise shapes must match, formulas must stay in the system fragment).
CheckResult check_proof(const ProofPtr& p, SystemId system, CheckOptions opts = {});

// JSON tree {"seq": "...", "rule": "...", "offset"?: k, "premises": [...]}.
// indent < 0 emits compact output.
std::string proof_to_json(const ProofPtr& p, int indent = -1);
ProofPtr proof_from_json(const std::string& text);  // throws Error on bad input

// A display-math inference tree with paper-style rule labels.
std::string proof_to_latex(const ProofPtr& p);

// left: Π -> A.  right: Γ, A, Δ -> B with A at `position` in the antecedent.
// Returns a Cut-rooted proof of Γ, Π, Δ -> B.  Throws Error on mismatch.
ProofPtr cut_compose(const ProofPtr& left, const ProofPtr& right, int position);

std::size_t proof_node_count(const ProofPtr& p);

}  // namespace cyclam
