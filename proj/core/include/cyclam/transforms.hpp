// Formula-level translations: the box expansion, the even/odd tower maps
// that clear shifts out of antecedent positions, shift erasure, the
// embedding of free rotation into the shift calculus, and the q-product
// towers.
#pragma once

#include <string>

#include "cyclam/formula.hpp"

namespace cyclam {

// Names reserved for generated primitives.  The generating transforms
// refuse input that already mentions them, which keeps the paper-style
// side conditions ("primitive types not occurring in ...") automatic.
struct FreshSymbolPool {
  std::string l = "__l";
  std::string r = "__r";

  // __q1, __q2, ...; k starts at 1.
  std::string q(int k) const;

  // true for any name this pool may generate
  bool owns(const std::string& name) const;
};

bool has_reserved_symbols(const Formula& f, const FreshSymbolPool& pool = {});

// throws Error when f mentions a reserved name
void require_fresh(const Formula& f, const FreshSymbolPool& pool = {});

// (l \ ((l * f) * r)) / r
Formula box(const Formula& f, const FreshSymbolPool& pool = {});

// Replace every even-parity B^c subtype by the B^(box c)^N tower and every
// odd one by box(B); o_n is the mirror assignment.  Requires f in the ^c
// fragment with size(f) <= n.
Formula e_n(const Formula& f, int n, const FreshSymbolPool& pool = {});
Formula o_n(const Formula& f, int n, const FreshSymbolPool& pool = {});

// Erase every ^c node.  Requires f in the ^c fragment.
Formula unneck(const Formula& f);

// The antecedent/succedent embedding of the rotation rule into the shift
// fragment.  Requires a division-product formula (no postfix operators).
Formula cal_A(const Formula& f);
Formula cal_S(const Formula& f);

// t_0 = f; t_k = __qk * (t_{k-1} / __qk)
Formula t_n(const Formula& f, int n, const FreshSymbolPool& pool = {});

}  // namespace cyclam
