#include "cyclam/search.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace cyclam {

namespace {

using FVec = std::vector<Formula>;

FVec rotl(const FVec& v, int k) {
  FVec out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(v[(i + static_cast<std::size_t>(k)) % v.size()]);
  return out;
}

FVec splice(const FVec& v, std::size_t from, std::size_t count, const FVec& repl) {
  FVec out;
  out.reserve(v.size() - count + repl.size());
  out.insert(out.end(), v.begin(), v.begin() + static_cast<long>(from));
  out.insert(out.end(), repl.begin(), repl.end());
  out.insert(out.end(), v.begin() + static_cast<long>(from + count), v.end());
  return out;
}

FVec slice(const FVec& v, std::size_t from, std::size_t to) {
  return FVec(v.begin() + static_cast<long>(from), v.begin() + static_cast<long>(to));
}

}  // namespace

Prover::Prover(SearchConfig cfg) : cfg_(cfg) {
  if (cfg_.system != SystemId::LBrac && cfg_.cut_budget != 0)
    throw Error("cut_budget is available under Lbrac only");
  if (cfg_.cut_budget < 0) throw Error("cut_budget must be nonnegative");
}

void Prover::clear_memo() {
  memo_.clear();
  core_memo_.clear();
}

void Prover::bump_memo() {
  if (memo_.size() + core_memo_.size() > cfg_.memo_limit)
    throw Error("memo_limit exceeded (" + std::to_string(cfg_.memo_limit) + " entries)");
}

std::optional<ProofPtr> Prover::derive(const Sequent& s) {
  if (s.lhs.empty()) throw Error("derive: empty antecedent");
  require_fragment(s, cfg_.system);

  cut_formulas_.clear();
  if (cfg_.system == SystemId::LBrac && cfg_.cut_budget > 0) {
    std::unordered_set<Formula, FormulaHash> seen;
    auto add_from = [&](const Formula& f) {
      for (const auto& g : subformulas(f))
        if (seen.insert(g).second) cut_formulas_.push_back(Formula::rev(g));
    };
    for (const auto& f : s.lhs) add_from(f);
    add_from(s.rhs);
  }
  return search(s, cfg_.cut_budget);
}

bool Prover::rotation_eligible(const Sequent& s) const {
  if (s.lhs.size() < 2) return false;
  switch (cfg_.system) {
    case SystemId::LCS: return true;
    case SystemId::LNeck: return s.rhs.kind() == FKind::Shift;
    case SystemId::LBrac: return s.rhs.kind() == FKind::Brac;
    default: return false;
  }
}

std::optional<ProofPtr> Prover::search(const Sequent& s, int budget) {
  Key key{s, budget};
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  std::optional<ProofPtr> result;
  if (rotation_eligible(s)) {
    const int n = static_cast<int>(s.lhs.size());
    for (int k = 0; k < n && !result; ++k) {
      Sequent rs{k == 0 ? s.lhs : rotl(s.lhs, k), s.rhs};
      auto sub = core(rs, budget);
      if (!sub) continue;
      if (k == 0) {
        result = sub;
      } else {
        RuleId rot = cfg_.system == SystemId::LCS      ? RuleId::CS
                     : cfg_.system == SystemId::LNeck ? RuleId::NeckRot
                                                      : RuleId::BracRot;
        result = make_proof(s, rot, {*sub}, k);
      }
    }
  } else {
    result = core(s, budget);
  }

  memo_.emplace(std::move(key), result);
  bump_memo();
  return result;
}

// All rules except rotation, which search() folds in front of this.
std::optional<ProofPtr> Prover::core(const Sequent& s, int budget) {
  Key key{s, budget};
  if (auto it = core_memo_.find(key); it != core_memo_.end()) return it->second;

  const FVec& L = s.lhs;
  const Formula& R = s.rhs;
  const std::size_t n = L.size();
  const SystemId sys = cfg_.system;
  std::optional<ProofPtr> found;

  auto rec = [&](const Sequent& q, int b) { return search(q, b); };

  // --- axiom leaves
  if (n == 1 && L[0].kind() == FKind::Prim && L[0] == R)
    found = make_proof(s, RuleId::Ax);
  if (!found && sys == SystemId::LBrac && n == 1 && L[0].kind() == FKind::Rev &&
      R.kind() == FKind::Brac && L[0].child() == R.child())
    found = make_proof(s, RuleId::AxRevBrac);

  // --- unary-premise left/right rules
  if (!found) {
    // (·→) at every product position
    for (std::size_t j = 0; j < n && !found; ++j) {
      if (L[j].kind() != FKind::Prod) continue;
      Sequent q{splice(L, j, 1, {L[j].left(), L[j].right()}), R};
      if (auto pr = rec(q, budget))
        found = make_proof(s, RuleId::ProdL, {*pr});
    }
  }
  if (!found && (sys == SystemId::LRev || sys == SystemId::LBrac)) {
    // strip ^r^r in the antecedent
    for (std::size_t j = 0; j < n && !found; ++j) {
      if (L[j].kind() != FKind::Rev || L[j].child().kind() != FKind::Rev) continue;
      Sequent q{splice(L, j, 1, {L[j].child().child()}), R};
      if (auto pr = rec(q, budget))
        found = make_proof(s, RuleId::RevRevL, {*pr});
    }
    // strip ^r^r in the succedent
    if (!found && R.kind() == FKind::Rev && R.child().kind() == FKind::Rev) {
      Sequent q{L, R.child().child()};
      if (auto pr = rec(q, budget))
        found = make_proof(s, RuleId::RevRevR, {*pr});
    }
    // Reverse the whole sequent against a reversed succedent.  The figure
    // shows all antecedent members reversal-headed; combined with the
    // (invertible) double-reversal rules it acts on any antecedent: a
    // member already carrying ^r loses it, a bare member gains one.
    if (!found && R.kind() == FKind::Rev) {
      FVec flipped;
      flipped.reserve(n);
      for (std::size_t i = n; i-- > 0;)
        flipped.push_back(L[i].kind() == FKind::Rev ? L[i].child()
                                                    : Formula::rev(L[i]));
      Sequent q{std::move(flipped), R.child()};
      if (auto pr = rec(q, budget))
        found = make_proof(s, RuleId::RevRev, {*pr});
    }
  }

  // --- right rules on the succedent head
  if (!found) {
    switch (R.kind()) {
      case FKind::Under: {
        FVec q = L;
        q.insert(q.begin(), R.denominator());
        if (auto pr = rec(Sequent{std::move(q), R.numerator()}, budget))
          found = make_proof(s, RuleId::UnderR, {*pr});
        break;
      }
      case FKind::Over: {
        FVec q = L;
        q.push_back(R.denominator());
        if (auto pr = rec(Sequent{std::move(q), R.numerator()}, budget))
          found = make_proof(s, RuleId::OverR, {*pr});
        break;
      }
      case FKind::Prod: {
        // split the antecedent, left part first; budgeted systems split the
        // budget across the two branches
        for (std::size_t i = 1; i < n && !found; ++i) {
          Sequent a{slice(L, 0, i), R.left()};
          Sequent b{slice(L, i, n), R.right()};
          for (int ba = 0; ba <= budget && !found; ++ba) {
            auto pa = rec(a, ba);
            if (!pa) continue;
            auto pb = rec(b, budget - ba);
            if (pb) found = make_proof(s, RuleId::ProdR, {*pa, *pb});
          }
        }
        break;
      }
      case FKind::Shift: {
        if (sys == SystemId::LNeck) {
          if (auto pr = rec(Sequent{L, R.child()}, budget))
            found = make_proof(s, RuleId::NeckR, {*pr});
          if (!found && n == 1 && L[0].kind() == FKind::Shift) {
            if (auto pr = rec(Sequent{{L[0].child()}, R}, budget))
              found = make_proof(s, RuleId::NeckL, {*pr});
          }
        }
        break;
      }
      case FKind::Brac: {
        if (sys == SystemId::LBrac) {
          if (auto pr = rec(Sequent{L, R.child()}, budget))
            found = make_proof(s, RuleId::BracR, {*pr});
          if (!found && n == 1 && L[0].kind() == FKind::Brac) {
            if (auto pr = rec(Sequent{{L[0].child()}, R}, budget))
              found = make_proof(s, RuleId::BracL, {*pr});
          }
        }
        break;
      }
      default:
        break;
    }
  }

  // --- binary-premise left rules (division elimination)
  if (!found) {
    for (std::size_t j = 0; j < n && !found; ++j) {
      if (L[j].kind() == FKind::Under) {
        // Γ, Π, X\Y, Δ -> C  ⟸  Γ, Y, Δ -> C ; Π -> X  with Π just left of j
        for (std::size_t t = 1; t <= j && !found; ++t) {
          Sequent arg{slice(L, j - t, j), L[j].denominator()};
          Sequent main{splice(L, j - t, t + 1, {L[j].numerator()}), R};
          for (int ba = 0; ba <= budget && !found; ++ba) {
            auto pa = rec(arg, ba);
            if (!pa) continue;
            auto pm = rec(main, budget - ba);
            if (pm) found = make_proof(s, RuleId::UnderL, {*pm, *pa});
          }
        }
      } else if (L[j].kind() == FKind::Over) {
        // Γ, Y/X, Π, Δ -> C  ⟸  Γ, Y, Δ -> C ; Π -> X  with Π just right of j
        for (std::size_t t = 1; j + t < n && !found; ++t) {
          Sequent arg{slice(L, j + 1, j + 1 + t), L[j].denominator()};
          Sequent main{splice(L, j, t + 1, {L[j].numerator()}), R};
          for (int ba = 0; ba <= budget && !found; ++ba) {
            auto pa = rec(arg, ba);
            if (!pa) continue;
            auto pm = rec(main, budget - ba);
            if (pm) found = make_proof(s, RuleId::OverL, {*pm, *pa});
          }
        }
      }
    }
  }

  // --- budgeted cuts (Lbrac): cut formula C^r over the goal's closure
  if (!found && budget > 0) {
    for (const auto& cf : cut_formulas_) {
      if (found) break;
      for (std::size_t i = 0; i < n && !found; ++i) {
        for (std::size_t jj = i + 1; jj <= n && !found; ++jj) {
          // Π = L[i..jj) is replaced by cf in the main premise
          Sequent piSeq{slice(L, i, jj), cf};
          Sequent mainSeq{splice(L, i, jj - i, {cf}), R};
          for (int ba = 0; ba < budget && !found; ++ba) {
            auto pa = rec(piSeq, ba);
            if (!pa) continue;
            auto pm = rec(mainSeq, budget - 1 - ba);
            if (pm)
              found = make_proof(s, RuleId::Cut, {*pa, *pm}, static_cast<int>(i));
          }
        }
      }
    }
  }

  core_memo_.emplace(std::move(key), found);
  bump_memo();
  return found;
}

std::optional<ProofPtr> derive(const Sequent& s, const SearchConfig& cfg) {
  Prover p(cfg);
  return p.derive(s);
}

bool derivable(const Sequent& s, const SearchConfig& cfg) {
  return derive(s, cfg).has_value();
}

// ---------------------------------------------------------------------------
// Sequent enumeration

std::vector<Sequent> enumerate_sequents(const std::vector<std::string>& alphabet,
                                        int max_total_size, SystemId system,
                                        int max_formula_size) {
  if (max_total_size < 0) return {};
  const int fmax = max_formula_size < 0 ? max_total_size
                                        : std::min(max_formula_size, max_total_size);

  // formulas[c] lists every fragment formula with exactly c connectives,
  // in a fixed constructive order
  std::vector<std::vector<Formula>> formulas(static_cast<std::size_t>(fmax) + 1);
  for (const auto& a : alphabet) formulas[0].push_back(Formula::prim(a));
  for (int c = 1; c <= fmax; ++c) {
    auto& out = formulas[static_cast<std::size_t>(c)];
    if (system == SystemId::LNeck)
      for (const auto& f : formulas[static_cast<std::size_t>(c - 1)])
        out.push_back(Formula::shift(f));
    if (system == SystemId::LRev || system == SystemId::LBrac)
      for (const auto& f : formulas[static_cast<std::size_t>(c - 1)])
        out.push_back(Formula::rev(f));
    if (system == SystemId::LBrac)
      for (const auto& f : formulas[static_cast<std::size_t>(c - 1)])
        out.push_back(Formula::brac(f));
    for (int i = 0; i + 1 <= c; ++i) {
      for (const auto& l : formulas[static_cast<std::size_t>(i)]) {
        for (const auto& r : formulas[static_cast<std::size_t>(c - 1 - i)]) {
          out.push_back(Formula::under(l, r));
          out.push_back(Formula::over(l, r));
          out.push_back(Formula::prod(l, r));
        }
      }
    }
  }

  std::vector<Sequent> result;
  // total = connectives + (antecedent length - 1)
  for (int total = 0; total <= max_total_size; ++total) {
    for (int n = 1; n <= total + 1; ++n) {
      int conn = total - (n - 1);
      if (conn < 0) break;
      // distribute conn over n antecedent slots plus the succedent
      std::vector<int> sizes(static_cast<std::size_t>(n) + 1, 0);
      std::vector<std::size_t> idx(static_cast<std::size_t>(n) + 1, 0);
      // enumerate all compositions of conn into n+1 nonnegative parts,
      // lexicographically
      std::function<void(int, int)> go = [&](int slot, int rest) {
        if (slot == n) {
          if (rest > fmax) return;
          sizes[static_cast<std::size_t>(n)] = rest;
          // walk every combination of formulas for the chosen sizes
          std::function<void(int)> pick = [&](int k) {
            if (k == n + 1) {
              Sequent s;
              s.lhs.reserve(static_cast<std::size_t>(n));
              for (int i = 0; i < n; ++i)
                s.lhs.push_back(
                    formulas[static_cast<std::size_t>(sizes[static_cast<std::size_t>(i)])]
                            [idx[static_cast<std::size_t>(i)]]);
              s.rhs = formulas[static_cast<std::size_t>(sizes[static_cast<std::size_t>(n)])]
                              [idx[static_cast<std::size_t>(n)]];
              result.push_back(std::move(s));
              return;
            }
            const auto& pool = formulas[static_cast<std::size_t>(sizes[static_cast<std::size_t>(k)])];
            for (std::size_t i = 0; i < pool.size(); ++i) {
              idx[static_cast<std::size_t>(k)] = i;
              pick(k + 1);
            }
          };
          pick(0);
          return;
        }
        for (int c = 0; c <= std::min(rest, fmax); ++c) {
          sizes[static_cast<std::size_t>(slot)] = c;
          go(slot + 1, rest - c);
        }
      };
      go(0, conn);
    }
  }
  return result;
}

}  // namespace cyclam
