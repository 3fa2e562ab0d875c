#pragma once

// The Hilbert-style axiomatization of the ^c system over single-type sequents
// A -> B: identity and associativity axioms, C -> C^c, residuation (curry /
// uncurry), transitivity, ^c monotonicity and product rotation under a ^c
// succedent.  Proofs are flat step lists; there is no proof search here
// (transitivity defeats naive backward termination), only checking and a
// translation from found sequent proofs.

#include <string>
#include <vector>

#include "cyclam/proof.hpp"

namespace cyclam {

struct HilbertStep {
  Sequent seq;                 // single-formula antecedent
  RuleId rule;                 // HAxId .. HNeckRot
  std::vector<int> premises;   // indices of earlier steps
};

struct HilbertCheckResult {
  bool ok = true;
  int bad_step = -1;  // index of the first invalid step
  std::string message;

  explicit operator bool() const { return ok; }
};

HilbertCheckResult check_hilbert_proof(const std::vector<HilbertStep>& steps);

// Right-associated product fold A1·(A2·(...·An)).
Formula product_fold(const std::vector<Formula>& fs);

// Compiles a cut-free ^c-fragment sequent proof of A1,...,An -> B into a
// Hilbert proof of A1·(...·An) -> B (the final step).  The output is not
// minimized; it always passes check_hilbert_proof.  Throws Error when the
// tree uses rules outside the cut-free ^c repertoire.
std::vector<HilbertStep> to_hilbert(const ProofPtr& proof);

}  // namespace cyclam
