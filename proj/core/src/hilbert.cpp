#include "cyclam/hilbert.hpp"

#include <algorithm>

namespace cyclam {

Formula product_fold(const std::vector<Formula>& fs) {
  if (fs.empty()) throw Error("product_fold: empty list");
  Formula acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = Formula::prod(fs[i], acc);
  return acc;
}

// ---------------------------------------------------------------------------
// Checking

namespace {

bool assoc_instance(const Formula& from, const Formula& to) {
  // A·(B·C) -> (A·B)·C
  if (from.kind() == FKind::Prod && from.right().kind() == FKind::Prod &&
      to.kind() == FKind::Prod && to.left().kind() == FKind::Prod &&
      from.left() == to.left().left() && from.right().left() == to.left().right() &&
      from.right().right() == to.right())
    return true;
  // (A·B)·C -> A·(B·C)
  if (from.kind() == FKind::Prod && from.left().kind() == FKind::Prod &&
      to.kind() == FKind::Prod && to.right().kind() == FKind::Prod &&
      from.left().left() == to.left() && from.left().right() == to.right().left() &&
      from.right() == to.right().right())
    return true;
  return false;
}

}  // namespace

HilbertCheckResult check_hilbert_proof(const std::vector<HilbertStep>& steps) {
  auto fail = [](int i, std::string msg) {
    return HilbertCheckResult{false, i, std::move(msg)};
  };

  for (int i = 0; i < static_cast<int>(steps.size()); ++i) {
    const HilbertStep& st = steps[static_cast<std::size_t>(i)];
    if (st.seq.lhs.size() != 1)
      return fail(i, "Hilbert steps are single-antecedent sequents");
    const Formula& A = st.seq.lhs[0];
    const Formula& B = st.seq.rhs;

    for (int p : st.premises)
      if (p < 0 || p >= i)
        return fail(i, "premise index " + std::to_string(p) +
                           " does not reference an earlier step");
    auto want_premises = [&](std::size_t k) { return st.premises.size() == k; };
    auto prem = [&](std::size_t k) -> const Sequent& {
      return steps[static_cast<std::size_t>(st.premises[k])].seq;
    };

    switch (st.rule) {
      case RuleId::HAxId:
        if (!want_premises(0)) return fail(i, "HAxId takes no premises");
        if (A != B) return fail(i, "HAxId must be A -> A");
        break;

      case RuleId::HAxAssoc:
        if (!want_premises(0)) return fail(i, "HAxAssoc takes no premises");
        if (!assoc_instance(A, B)) return fail(i, "not an associativity instance");
        break;

      case RuleId::HAxNeck:
        if (!want_premises(0)) return fail(i, "HAxNeck takes no premises");
        if (B.kind() != FKind::Shift || B.child() != A)
          return fail(i, "HAxNeck must be C -> C^c");
        break;

      case RuleId::HCurry: {
        if (!want_premises(1)) return fail(i, "HCurry takes one premise");
        const Sequent& p = prem(0);
        if (p.lhs[0].kind() != FKind::Prod)
          return fail(i, "HCurry premise antecedent must be a product");
        const Formula &X = p.lhs[0].left(), &Y = p.lhs[0].right(), &Z = p.rhs;
        bool over_ok = B.kind() == FKind::Over && A == X && B.numerator() == Z &&
                       B.denominator() == Y;
        bool under_ok = B.kind() == FKind::Under && A == Y && B.numerator() == Z &&
                        B.denominator() == X;
        if (!over_ok && !under_ok) return fail(i, "HCurry conclusion shape mismatch");
        break;
      }

      case RuleId::HUncurry: {
        if (!want_premises(1)) return fail(i, "HUncurry takes one premise");
        if (A.kind() != FKind::Prod)
          return fail(i, "HUncurry conclusion antecedent must be a product");
        const Sequent& p = prem(0);
        const Formula &X = A.left(), &Y = A.right(), &Z = B;
        bool over_ok = p.rhs.kind() == FKind::Over && p.lhs[0] == X &&
                       p.rhs.numerator() == Z && p.rhs.denominator() == Y;
        bool under_ok = p.rhs.kind() == FKind::Under && p.lhs[0] == Y &&
                        p.rhs.numerator() == Z && p.rhs.denominator() == X;
        if (!over_ok && !under_ok) return fail(i, "HUncurry premise shape mismatch");
        break;
      }

      case RuleId::HTrans: {
        if (!want_premises(2)) return fail(i, "HTrans takes two premises");
        const Sequent &p = prem(0), &q = prem(1);
        if (p.rhs != q.lhs[0]) return fail(i, "HTrans premises do not chain");
        if (A != p.lhs[0] || B != q.rhs) return fail(i, "HTrans conclusion mismatch");
        break;
      }

      case RuleId::HNeckMono: {
        if (!want_premises(1)) return fail(i, "HNeckMono takes one premise");
        const Sequent& p = prem(0);
        if (p.rhs.kind() != FKind::Shift)
          return fail(i, "HNeckMono needs a ^c-headed succedent");
        if (A.kind() != FKind::Shift || A.child() != p.lhs[0] || B != p.rhs)
          return fail(i, "HNeckMono conclusion mismatch");
        break;
      }

      case RuleId::HNeckRot: {
        if (!want_premises(1)) return fail(i, "HNeckRot takes one premise");
        const Sequent& p = prem(0);
        if (p.rhs.kind() != FKind::Shift)
          return fail(i, "HNeckRot needs a ^c-headed succedent");
        if (p.lhs[0].kind() != FKind::Prod || A.kind() != FKind::Prod)
          return fail(i, "HNeckRot works on products");
        if (A.left() != p.lhs[0].right() || A.right() != p.lhs[0].left() || B != p.rhs)
          return fail(i, "HNeckRot conclusion mismatch");
        break;
      }

      default:
        return fail(i, std::string("rule ") + std::string(rule_name(st.rule)) +
                           " is not a Hilbert-system rule");
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Translation of cut-free ^c sequent proofs

namespace {

using FVec = std::vector<Formula>;

void leaves_of(const Formula& f, FVec& out) {
  if (f.kind() == FKind::Prod) {
    leaves_of(f.left(), out);
    leaves_of(f.right(), out);
  } else {
    out.push_back(f);
  }
}

FVec leaves_of(const Formula& f) {
  FVec out;
  leaves_of(f, out);
  return out;
}

class Translator {
public:
  std::vector<HilbertStep> run(const ProofPtr& p) {
    int i = translate(p);
    // make sure the statement is literally the final step
    if (i != last()) {
      int idn = ax(from(i));
      i = emit(from(i), to(i), RuleId::HTrans, {idn, i});
    }
    return std::move(steps_);
  }

private:
  std::vector<HilbertStep> steps_;

  int last() const { return static_cast<int>(steps_.size()) - 1; }
  const Formula& from(int i) const { return steps_[static_cast<std::size_t>(i)].seq.lhs[0]; }
  const Formula& to(int i) const { return steps_[static_cast<std::size_t>(i)].seq.rhs; }

  int emit(Formula a, Formula b, RuleId r, std::vector<int> prems = {}) {
    steps_.push_back({Sequent{{std::move(a)}, std::move(b)}, r, std::move(prems)});
    return last();
  }

  int ax(const Formula& a) { return emit(a, a, RuleId::HAxId); }
  int neck_ax(const Formula& c) { return emit(c, Formula::shift(c), RuleId::HAxNeck); }

  int assoc_lr(const Formula& a, const Formula& b, const Formula& c) {
    // (a·b)·c -> a·(b·c)
    return emit(Formula::prod(Formula::prod(a, b), c),
                Formula::prod(a, Formula::prod(b, c)), RuleId::HAxAssoc);
  }
  int assoc_rl(const Formula& a, const Formula& b, const Formula& c) {
    // a·(b·c) -> (a·b)·c
    return emit(Formula::prod(a, Formula::prod(b, c)),
                Formula::prod(Formula::prod(a, b), c), RuleId::HAxAssoc);
  }

  int trans(int i, int j) {
    if (to(i) != from(j))
      throw Error("internal: transitivity chain mismatch: " + print_formula(to(i)) +
                  " vs " + print_formula(from(j)));
    if (from(i) == to(i)) return j;  // identity on the left
    if (from(j) == to(j)) return i;  // identity on the right
    return emit(from(i), to(j), RuleId::HTrans, {i, j});
  }

  int curry_over(int i) {  // X·Y -> Z  ⟹  X -> Z/Y
    const Formula& p = from(i);
    return emit(p.left(), Formula::over(to(i), p.right()), RuleId::HCurry, {i});
  }
  int curry_under(int i) {  // X·Y -> Z  ⟹  Y -> X\Z
    const Formula& p = from(i);
    return emit(p.right(), Formula::under(p.left(), to(i)), RuleId::HCurry, {i});
  }
  int uncurry(int i) {
    const Formula& t = to(i);
    if (t.kind() == FKind::Over)  // X -> Z/Y  ⟹  X·Y -> Z
      return emit(Formula::prod(from(i), t.denominator()), t.numerator(),
                  RuleId::HUncurry, {i});
    if (t.kind() == FKind::Under)  // Y -> X\Z  ⟹  X·Y -> Z
      return emit(Formula::prod(t.denominator(), from(i)), t.numerator(),
                  RuleId::HUncurry, {i});
    throw Error("internal: uncurry on a non-division statement");
  }

  int neck_mono(int i) {  // A -> C^c  ⟹  A^c -> C^c
    return emit(Formula::shift(from(i)), to(i), RuleId::HNeckMono, {i});
  }
  int neck_rot(int i) {  // A·B -> C^c  ⟹  B·A -> C^c
    const Formula& p = from(i);
    return emit(Formula::prod(p.right(), p.left()), to(i), RuleId::HNeckRot, {i});
  }

  int mono_right(int i, const Formula& c) {  // A -> B  ⟹  A·C -> B·C
    if (from(i) == to(i)) return ax(Formula::prod(from(i), c));
    int s1 = ax(Formula::prod(to(i), c));
    int s2 = curry_over(s1);  // B -> (B·C)/C
    int s3 = trans(i, s2);
    return uncurry(s3);
  }
  int mono_left(int i, const Formula& c) {  // A -> B  ⟹  C·A -> C·B
    if (from(i) == to(i)) return ax(Formula::prod(c, from(i)));
    int s1 = ax(Formula::prod(c, to(i)));
    int s2 = curry_under(s1);  // B -> C\(C·B)
    int s3 = trans(i, s2);
    return uncurry(s3);
  }

  // x -> right-comb over x's maximal product leaves
  int to_right(const Formula& x) {
    if (x.kind() != FKind::Prod) return ax(x);
    int il = to_right(x.left());
    int ir = to_right(x.right());
    int m1 = mono_right(il, x.right());
    int m2 = mono_left(ir, to(il));
    int t = trans(m1, m2);
    int g = glue(to(il), to(ir));
    return trans(t, g);
  }

  // p, q right-combs: p·q -> right-comb of (leaves p ++ leaves q)
  int glue(const Formula& p, const Formula& q) {
    if (p.kind() != FKind::Prod) return ax(Formula::prod(p, q));
    int a = assoc_lr(p.left(), p.right(), q);
    int inner = glue(p.right(), q);
    int m = mono_left(inner, p.left());
    return trans(a, m);
  }

  // right-comb over y's leaves -> y
  int from_right(const Formula& y) {
    if (y.kind() != FKind::Prod) return ax(y);
    FVec lL = leaves_of(y.left());
    FVec lR = leaves_of(y.right());
    int u = unglue(lL, lR);
    int m1 = mono_right(from_right(y.left()), product_fold(lR));
    int m2 = mono_left(from_right(y.right()), y.left());
    return trans(u, trans(m1, m2));
  }

  // right-comb(a ++ b) -> right-comb(a) · right-comb(b)
  int unglue(const FVec& a, const FVec& b) {
    if (a.size() == 1) return ax(Formula::prod(a[0], product_fold(b)));
    FVec atail(a.begin() + 1, a.end());
    int inner = unglue(atail, b);
    int m = mono_left(inner, a[0]);
    int as = assoc_rl(a[0], product_fold(atail), product_fold(b));
    return trans(m, as);
  }

  // x -> y for product trees over the same maximal leaf sequence
  int rebracket(const Formula& x, const Formula& y) {
    if (x == y) return ax(x);
    if (leaves_of(x) != leaves_of(y))
      throw Error("internal: rebracketing across different leaf sequences");
    return trans(to_right(x), from_right(y));
  }

  // right-comb(G ++ [from(j)] ++ D) -> right-comb(G ++ [to(j)] ++ D),
  // entries treated as leaves
  int replace_in_comb(const FVec& g, int j, const FVec& d) {
    if (!g.empty()) {
      FVec rest(g.begin() + 1, g.end());
      int inner = replace_in_comb(rest, j, d);
      return mono_left(inner, g[0]);
    }
    if (d.empty()) return j;
    return mono_right(j, product_fold(d));
  }

  static Formula fold(const FVec& v) { return product_fold(v); }

  int translate(const ProofPtr& node) {
    const Sequent& s = node->conclusion;
    const FVec& L = s.lhs;
    const Formula& R = s.rhs;
    const std::size_t n = L.size();

    switch (node->rule) {
      case RuleId::Ax:
        return ax(L[0]);

      case RuleId::UnderR: {
        int ih = translate(node->premises[0]);
        return curry_under(ih);
      }

      case RuleId::OverR: {
        int ih = translate(node->premises[0]);
        FVec ext = L;
        ext.push_back(R.denominator());
        int r = rebracket(Formula::prod(fold(L), R.denominator()), fold(ext));
        return curry_over(trans(r, ih));
      }

      case RuleId::ProdL: {
        int ih = translate(node->premises[0]);
        int r = rebracket(fold(L), from(ih));
        return trans(r, ih);
      }

      case RuleId::ProdR: {
        int ia = translate(node->premises[0]);
        int ib = translate(node->premises[1]);
        const Sequent& pa = node->premises[0]->conclusion;
        const Sequent& pb = node->premises[1]->conclusion;
        int m1 = mono_right(ia, fold(pb.lhs));
        int m2 = mono_left(ib, R.left());
        int t = trans(m1, m2);
        int r = rebracket(fold(L), Formula::prod(fold(pa.lhs), fold(pb.lhs)));
        return trans(r, t);
      }

      case RuleId::UnderL:
      case RuleId::OverL: {
        const Sequent& main = node->premises[0]->conclusion;
        const Sequent& arg = node->premises[1]->conclusion;
        const std::size_t t = arg.lhs.size();
        // locate the division position consistent with the premises
        for (std::size_t j = 0; j < n; ++j) {
          const Formula& f = L[j];
          FVec gamma, delta, check;
          if (node->rule == RuleId::UnderL) {
            if (f.kind() != FKind::Under || j < t) continue;
            if (!std::equal(arg.lhs.begin(), arg.lhs.end(),
                            L.begin() + static_cast<long>(j - t)))
              continue;
            gamma.assign(L.begin(), L.begin() + static_cast<long>(j - t));
            delta.assign(L.begin() + static_cast<long>(j + 1), L.end());
          } else {
            if (f.kind() != FKind::Over || j + t >= n) continue;
            if (!std::equal(arg.lhs.begin(), arg.lhs.end(),
                            L.begin() + static_cast<long>(j + 1)))
              continue;
            gamma.assign(L.begin(), L.begin() + static_cast<long>(j));
            delta.assign(L.begin() + static_cast<long>(j + t + 1), L.end());
          }
          if (arg.rhs != f.denominator()) continue;
          check = gamma;
          check.push_back(f.numerator());
          check.insert(check.end(), delta.begin(), delta.end());
          if (check != main.lhs) continue;

          int ihArg = translate(node->premises[1]);  // fold(Π) -> X
          int kAx = ax(f);
          int kUn = uncurry(kAx);  // X·(X\Y) -> Y   resp.  (Y/X)·X -> Y
          Formula S;
          int t2;
          if (node->rule == RuleId::UnderL) {
            int m = mono_right(ihArg, f);  // fold(Π)·(X\Y) -> X·(X\Y)
            t2 = trans(m, kUn);
            S = Formula::prod(fold(arg.lhs), f);
          } else {
            int m = mono_left(ihArg, f);  // (Y/X)·fold(Π) -> (Y/X)·X
            t2 = trans(m, kUn);
            S = Formula::prod(f, fold(arg.lhs));
          }
          int ihMain = translate(node->premises[0]);  // fold(Γ,Y,Δ) -> C
          int rep = replace_in_comb(gamma, t2, delta);
          FVec mid = gamma;
          mid.push_back(S);
          mid.insert(mid.end(), delta.begin(), delta.end());
          int r = rebracket(fold(L), fold(mid));
          return trans(r, trans(rep, ihMain));
        }
        throw Error("internal: division node does not match its premises");
      }

      case RuleId::NeckR: {
        int ih = translate(node->premises[0]);
        int nx = neck_ax(R.child());
        return trans(ih, nx);
      }

      case RuleId::NeckL: {
        int ih = translate(node->premises[0]);
        return neck_mono(ih);
      }

      case RuleId::NeckRot: {
        int k = node->offset;
        const FVec& plhs = node->premises[0]->conclusion.lhs;
        if (k < 0) {  // infer the rotation offset
          for (std::size_t c = 1; c < n; ++c) {
            bool match = true;
            for (std::size_t i = 0; i < n && match; ++i)
              match = plhs[i] == L[(i + c) % n];
            if (match) {
              k = static_cast<int>(c);
              break;
            }
          }
          if (k < 0) throw Error("internal: rotation premise mismatch");
        }
        FVec psi(L.begin(), L.begin() + k);
        FVec pi(L.begin() + k, L.end());
        int ih = translate(node->premises[0]);  // fold(Π ++ Ψ) -> A^c
        FVec pipsi = pi;
        pipsi.insert(pipsi.end(), psi.begin(), psi.end());
        int r1 = rebracket(Formula::prod(fold(pi), fold(psi)), fold(pipsi));
        int t1 = trans(r1, ih);
        int hr = neck_rot(t1);  // fold(Ψ)·fold(Π) -> A^c
        int r2 = rebracket(fold(L), Formula::prod(fold(psi), fold(pi)));
        return trans(r2, hr);
      }

      default:
        throw Error(std::string("to_hilbert: rule ") +
                    std::string(rule_name(node->rule)) +
                    " is outside the cut-free ^c repertoire");
    }
  }
};

}  // namespace

std::vector<HilbertStep> to_hilbert(const ProofPtr& proof) {
  if (!proof) throw Error("to_hilbert: null proof");
  return Translator().run(proof);
}

}  // namespace cyclam
