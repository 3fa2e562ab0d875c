#include "cyclam/proof.hpp"

#include <algorithm>

#include "json.hpp"

namespace cyclam {

namespace {

struct RuleNameRow {
  RuleId id;
  std::string_view name;
};

constexpr RuleNameRow kRuleNames[] = {
    {RuleId::Ax, "Ax"},
    {RuleId::UnderL, "UnderL"},
    {RuleId::UnderR, "UnderR"},
    {RuleId::OverL, "OverL"},
    {RuleId::OverR, "OverR"},
    {RuleId::ProdL, "ProdL"},
    {RuleId::ProdR, "ProdR"},
    {RuleId::NeckR, "NeckR"},
    {RuleId::NeckL, "NeckL"},
    {RuleId::NeckRot, "NeckRot"},
    {RuleId::CS, "CS"},
    {RuleId::RevRev, "RevRev"},
    {RuleId::RevRevL, "RevRevL"},
    {RuleId::RevRevR, "RevRevR"},
    {RuleId::BracR, "BracR"},
    {RuleId::BracL, "BracL"},
    {RuleId::BracRot, "BracRot"},
    {RuleId::AxRevBrac, "AxRevBrac"},
    {RuleId::Cut, "Cut"},
    {RuleId::OverL2, "OverL2"},
    {RuleId::UnderOverL2, "UnderOverL2"},
    {RuleId::ProdR2, "ProdR2"},
    {RuleId::ProdL2, "ProdL2"},
    {RuleId::HAxId, "HAxId"},
    {RuleId::HAxAssoc, "HAxAssoc"},
    {RuleId::HAxNeck, "HAxNeck"},
    {RuleId::HCurry, "HCurry"},
    {RuleId::HUncurry, "HUncurry"},
    {RuleId::HTrans, "HTrans"},
    {RuleId::HNeckMono, "HNeckMono"},
    {RuleId::HNeckRot, "HNeckRot"},
};

}  // namespace

std::string_view rule_name(RuleId r) {
  for (const auto& row : kRuleNames)
    if (row.id == r) return row.name;
  return "?";
}

std::optional<RuleId> rule_from_name(std::string_view name) {
  for (const auto& row : kRuleNames)
    if (row.name == name) return row.id;
  return std::nullopt;
}

ProofPtr make_proof(Sequent conclusion, RuleId rule, std::vector<ProofPtr> premises,
                    int offset) {
  auto n = std::make_shared<ProofNode>();
  n->conclusion = std::move(conclusion);
  n->rule = rule;
  n->offset = offset;
  n->premises = std::move(premises);
  return n;
}

// ---------------------------------------------------------------------------
// Checker

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

struct Checker {
  SystemId system;
  CheckOptions opts;
  CheckResult res;

  bool fail(const ProofNode& n, const std::vector<int>& path, std::string msg) {
    res.ok = false;
    res.path = path;
    res.message = std::move(msg) + " [rule " + std::string(rule_name(n.rule)) +
                  ", conclusion " + print_sequent(n.conclusion) + "]";
    return false;
  }

  bool node_ok(const ProofNode& n, std::vector<int>& path) {
    const FVec& L = n.conclusion.lhs;
    const Formula& R = n.conclusion.rhs;
    const std::size_t nn = L.size();
    const auto& ps = n.premises;

    if (nn == 0) return fail(n, path, "empty antecedent");
    if (!fragment_ok(n.conclusion, system))
      return fail(n, path, "conclusion outside the system fragment");

    auto premise_count = [&](std::size_t k) {
      if (ps.size() != k)
        return fail(n, path, "expected " + std::to_string(k) + " premise(s), got " +
                                 std::to_string(ps.size()));
      return true;
    };
    auto prem = [&](std::size_t i) -> const Sequent& { return ps[i]->conclusion; };

    switch (n.rule) {
      case RuleId::Ax:
        if (!premise_count(0)) return false;
        if (nn != 1 || L[0] != R) return fail(n, path, "axiom must be A -> A");
        return true;

      case RuleId::AxRevBrac:
        if (system != SystemId::LBrac) return fail(n, path, "AxRevBrac is an Lbrac axiom");
        if (!premise_count(0)) return false;
        if (nn != 1 || L[0].kind() != FKind::Rev || R.kind() != FKind::Brac ||
            L[0].child() != R.child())
          return fail(n, path, "axiom must be A^r -> A^b");
        return true;

      case RuleId::UnderR: {
        if (!premise_count(1)) return false;
        if (R.kind() != FKind::Under) return fail(n, path, "succedent is not a left division");
        FVec want = L;
        want.insert(want.begin(), R.denominator());
        if (prem(0).lhs != want || prem(0).rhs != R.numerator())
          return fail(n, path, "premise must prefix the denominator");
        return true;
      }

      case RuleId::OverR: {
        if (!premise_count(1)) return false;
        if (R.kind() != FKind::Over) return fail(n, path, "succedent is not a right division");
        FVec want = L;
        want.push_back(R.denominator());
        if (prem(0).lhs != want || prem(0).rhs != R.numerator())
          return fail(n, path, "premise must append the denominator");
        return true;
      }

      case RuleId::ProdR: {
        if (!premise_count(2)) return false;
        if (R.kind() != FKind::Prod) return fail(n, path, "succedent is not a product");
        const Sequent &a = prem(0), &b = prem(1);
        if (a.rhs != R.left() || b.rhs != R.right())
          return fail(n, path, "premise succedents must be the product's factors");
        if (a.lhs.empty() || b.lhs.empty())
          return fail(n, path, "both premise antecedents must be nonempty");
        FVec want = a.lhs;
        want.insert(want.end(), b.lhs.begin(), b.lhs.end());
        if (want != L) return fail(n, path, "premise antecedents must split the conclusion's");
        return true;
      }

      case RuleId::ProdL: {
        if (!premise_count(1)) return false;
        const Sequent& a = prem(0);
        if (a.rhs != R) return fail(n, path, "premise succedent must match");
        for (std::size_t j = 0; j < nn; ++j) {
          if (L[j].kind() != FKind::Prod) continue;
          if (a.lhs == splice(L, j, 1, {L[j].left(), L[j].right()})) return true;
        }
        return fail(n, path, "no product position matches the premise");
      }

      case RuleId::UnderL: {
        if (!premise_count(2)) return false;
        const Sequent &main = prem(0), &arg = prem(1);
        if (main.rhs != R) return fail(n, path, "first premise succedent must match");
        std::size_t t = arg.lhs.size();
        if (t == 0) return fail(n, path, "argument premise antecedent must be nonempty");
        for (std::size_t j = t; j < nn; ++j) {
          if (L[j].kind() != FKind::Under) continue;
          if (arg.rhs != L[j].denominator()) continue;
          if (!std::equal(arg.lhs.begin(), arg.lhs.end(), L.begin() + static_cast<long>(j - t)))
            continue;
          if (main.lhs == splice(L, j - t, t + 1, {L[j].numerator()})) return true;
        }
        return fail(n, path, "no left-division position matches the premises");
      }

      case RuleId::OverL: {
        if (!premise_count(2)) return false;
        const Sequent &main = prem(0), &arg = prem(1);
        if (main.rhs != R) return fail(n, path, "first premise succedent must match");
        std::size_t t = arg.lhs.size();
        if (t == 0) return fail(n, path, "argument premise antecedent must be nonempty");
        for (std::size_t j = 0; j + t < nn; ++j) {
          if (L[j].kind() != FKind::Over) continue;
          if (arg.rhs != L[j].denominator()) continue;
          if (!std::equal(arg.lhs.begin(), arg.lhs.end(), L.begin() + static_cast<long>(j + 1)))
            continue;
          if (main.lhs == splice(L, j, t + 1, {L[j].numerator()})) return true;
        }
        return fail(n, path, "no right-division position matches the premises");
      }

      case RuleId::NeckR:
        if (system != SystemId::LNeck) return fail(n, path, "NeckR needs system Lneck");
        if (!premise_count(1)) return false;
        if (R.kind() != FKind::Shift) return fail(n, path, "succedent is not ^c-headed");
        if (prem(0).lhs != L || prem(0).rhs != R.child())
          return fail(n, path, "premise must drop the succedent shift");
        return true;

      case RuleId::NeckL:
        if (system != SystemId::LNeck) return fail(n, path, "NeckL needs system Lneck");
        if (!premise_count(1)) return false;
        if (nn != 1 || L[0].kind() != FKind::Shift)
          return fail(n, path, "antecedent must be a single ^c type");
        if (R.kind() != FKind::Shift) return fail(n, path, "succedent is not ^c-headed");
        if (prem(0).lhs != FVec{L[0].child()} || prem(0).rhs != R)
          return fail(n, path, "premise must drop the antecedent shift");
        return true;

      case RuleId::NeckRot:
      case RuleId::BracRot:
      case RuleId::CS: {
        if (n.rule == RuleId::NeckRot && system != SystemId::LNeck)
          return fail(n, path, "NeckRot needs system Lneck");
        if (n.rule == RuleId::BracRot && system != SystemId::LBrac)
          return fail(n, path, "BracRot needs system Lbrac");
        if (n.rule == RuleId::CS && system != SystemId::LCS)
          return fail(n, path, "CS needs system Lcs");
        if (n.rule == RuleId::NeckRot && R.kind() != FKind::Shift)
          return fail(n, path, "rotation needs a ^c-headed succedent");
        if (n.rule == RuleId::BracRot && R.kind() != FKind::Brac)
          return fail(n, path, "rotation needs a ^b-headed succedent");
        if (!premise_count(1)) return false;
        if (nn < 2) return fail(n, path, "rotation needs at least two antecedent types");
        if (prem(0).rhs != R) return fail(n, path, "rotation keeps the succedent");
        if (n.offset >= 0) {
          if (n.offset < 1 || static_cast<std::size_t>(n.offset) >= nn)
            return fail(n, path, "rotation offset out of range");
          if (prem(0).lhs != rotl(L, n.offset))
            return fail(n, path, "premise is not the recorded rotation");
          return true;
        }
        for (std::size_t k = 1; k < nn; ++k)
          if (prem(0).lhs == rotl(L, static_cast<int>(k))) return true;
        return fail(n, path, "premise is not a rotation of the conclusion");
      }

      case RuleId::RevRev: {
        if (system != SystemId::LRev && system != SystemId::LBrac)
          return fail(n, path, "RevRev needs ^r in the system");
        if (!premise_count(1)) return false;
        if (R.kind() != FKind::Rev) return fail(n, path, "succedent is not ^r-headed");
        const Sequent& a = prem(0);
        if (a.lhs.size() != nn || a.rhs != R.child())
          return fail(n, path, "premise shape mismatch");
        // Figure instance: every conclusion member is ^r-headed and loses
        // the ^r in the (reversed) premise.  The invertible double-reversal
        // rules extend this to bare members, which instead gain an ^r.
        for (std::size_t i = 0; i < nn; ++i) {
          const Formula& c = L[nn - 1 - i];
          const Formula want =
              c.kind() == FKind::Rev ? c.child() : Formula::rev(c);
          if (a.lhs[i] != want)
            return fail(n, path, "premise must reverse the antecedent, toggling ^r on each member");
        }
        return true;
      }

      case RuleId::RevRevL: {
        if (system != SystemId::LRev && system != SystemId::LBrac)
          return fail(n, path, "RevRevL needs ^r in the system");
        if (!premise_count(1)) return false;
        const Sequent& a = prem(0);
        if (a.rhs != R) return fail(n, path, "premise succedent must match");
        // The rule is invertible; accept a double reversal stripped in
        // either direction at one position.
        for (std::size_t j = 0; j < nn; ++j) {
          if (L[j].kind() == FKind::Rev && L[j].child().kind() == FKind::Rev &&
              a.lhs == splice(L, j, 1, {L[j].child().child()}))
            return true;
          if (a.lhs == splice(L, j, 1, {Formula::rev(Formula::rev(L[j]))}))
            return true;
        }
        return fail(n, path, "no ^r^r position matches the premise");
      }

      case RuleId::RevRevR: {
        if (system != SystemId::LRev && system != SystemId::LBrac)
          return fail(n, path, "RevRevR needs ^r in the system");
        if (!premise_count(1)) return false;
        const Sequent& a = prem(0);
        if (a.lhs != L) return fail(n, path, "premise antecedent must match");
        const bool strip = R.kind() == FKind::Rev && R.child().kind() == FKind::Rev &&
                           a.rhs == R.child().child();
        const bool wrap = a.rhs == Formula::rev(Formula::rev(R));
        if (!strip && !wrap)
          return fail(n, path, "premise must differ from the succedent by a double reversal");
        return true;
      }

      case RuleId::BracR:
        if (system != SystemId::LBrac) return fail(n, path, "BracR needs system Lbrac");
        if (!premise_count(1)) return false;
        if (R.kind() != FKind::Brac) return fail(n, path, "succedent is not ^b-headed");
        if (prem(0).lhs != L || prem(0).rhs != R.child())
          return fail(n, path, "premise must drop the succedent bracelet");
        return true;

      case RuleId::BracL:
        if (system != SystemId::LBrac) return fail(n, path, "BracL needs system Lbrac");
        if (!premise_count(1)) return false;
        if (nn != 1 || L[0].kind() != FKind::Brac)
          return fail(n, path, "antecedent must be a single ^b type");
        if (R.kind() != FKind::Brac) return fail(n, path, "succedent is not ^b-headed");
        if (prem(0).lhs != FVec{L[0].child()} || prem(0).rhs != R)
          return fail(n, path, "premise must drop the antecedent bracelet");
        return true;

      case RuleId::Cut: {
        if (system != SystemId::LBrac && !opts.allow_cut)
          return fail(n, path, "cut is not allowed here");
        if (!premise_count(2)) return false;
        const Sequent &pi = prem(0), &main = prem(1);
        if (main.rhs != R) return fail(n, path, "second premise succedent must match");
        const Formula& A = pi.rhs;
        auto matches_at = [&](std::size_t j) {
          return j < main.lhs.size() && main.lhs[j] == A &&
                 L == splice(main.lhs, j, 1, pi.lhs);
        };
        if (n.offset >= 0) {
          if (!matches_at(static_cast<std::size_t>(n.offset)))
            return fail(n, path, "cut position does not match the premises");
          return true;
        }
        for (std::size_t j = 0; j < main.lhs.size(); ++j)
          if (matches_at(j)) return true;
        return fail(n, path, "no cut position matches the premises");
      }

      case RuleId::OverL2: {
        // Γ, (E/D)/A, Ψ, Π, Δ -> C  ⟸  Γ, E, Δ -> C ; Π -> D ; Ψ -> A
        if (system != SystemId::LNeck || !opts.allow_doubled)
          return fail(n, path, "doubled figures are accepted under Lneck only");
        if (!premise_count(3)) return false;
        const Sequent &main = prem(0), &pd = prem(1), &pa = prem(2);
        if (main.rhs != R) return fail(n, path, "first premise succedent must match");
        std::size_t t = pd.lhs.size(), u = pa.lhs.size();
        if (t == 0 || u == 0) return fail(n, path, "premise antecedents must be nonempty");
        for (std::size_t j = 0; j + u + t < nn; ++j) {
          const Formula& f = L[j];
          if (f.kind() != FKind::Over || f.numerator().kind() != FKind::Over) continue;
          if (f.denominator() != pa.rhs) continue;
          if (f.numerator().denominator() != pd.rhs) continue;
          const Formula& E = f.numerator().numerator();
          if (!std::equal(pa.lhs.begin(), pa.lhs.end(), L.begin() + static_cast<long>(j + 1)))
            continue;
          if (!std::equal(pd.lhs.begin(), pd.lhs.end(),
                          L.begin() + static_cast<long>(j + 1 + u)))
            continue;
          if (main.lhs == splice(L, j, 1 + u + t, {E})) return true;
        }
        return fail(n, path, "no (E/D)/A position matches the premises");
      }

      case RuleId::UnderOverL2: {
        // Γ, Π, (D\E)/A, Ψ, Δ -> C  ⟸  Γ, E, Δ -> C ; Π -> D ; Ψ -> A
        if (system != SystemId::LNeck || !opts.allow_doubled)
          return fail(n, path, "doubled figures are accepted under Lneck only");
        if (!premise_count(3)) return false;
        const Sequent &main = prem(0), &pd = prem(1), &pa = prem(2);
        if (main.rhs != R) return fail(n, path, "first premise succedent must match");
        std::size_t t = pd.lhs.size(), u = pa.lhs.size();
        if (t == 0 || u == 0) return fail(n, path, "premise antecedents must be nonempty");
        for (std::size_t j = t; j + u < nn; ++j) {
          const Formula& f = L[j];
          if (f.kind() != FKind::Over || f.numerator().kind() != FKind::Under) continue;
          if (f.denominator() != pa.rhs) continue;
          if (f.numerator().denominator() != pd.rhs) continue;
          const Formula& E = f.numerator().numerator();
          if (!std::equal(pd.lhs.begin(), pd.lhs.end(), L.begin() + static_cast<long>(j - t)))
            continue;
          if (!std::equal(pa.lhs.begin(), pa.lhs.end(), L.begin() + static_cast<long>(j + 1)))
            continue;
          if (main.lhs == splice(L, j - t, t + 1 + u, {E})) return true;
        }
        return fail(n, path, "no (D\\E)/A position matches the premises");
      }

      case RuleId::ProdR2: {
        if (system != SystemId::LNeck || !opts.allow_doubled)
          return fail(n, path, "doubled figures are accepted under Lneck only");
        if (!premise_count(3)) return false;
        if (R.kind() != FKind::Prod || R.left().kind() != FKind::Prod)
          return fail(n, path, "succedent must be (D*E)*B");
        const Sequent &pd = prem(0), &pe = prem(1), &pb = prem(2);
        if (pd.rhs != R.left().left() || pe.rhs != R.left().right() || pb.rhs != R.right())
          return fail(n, path, "premise succedents must be the three factors");
        if (pd.lhs.empty() || pe.lhs.empty() || pb.lhs.empty())
          return fail(n, path, "premise antecedents must be nonempty");
        FVec want = pd.lhs;
        want.insert(want.end(), pe.lhs.begin(), pe.lhs.end());
        want.insert(want.end(), pb.lhs.begin(), pb.lhs.end());
        if (want != L) return fail(n, path, "premises must split the antecedent in order");
        return true;
      }

      case RuleId::ProdL2: {
        if (system != SystemId::LNeck || !opts.allow_doubled)
          return fail(n, path, "doubled figures are accepted under Lneck only");
        if (!premise_count(1)) return false;
        const Sequent& a = prem(0);
        if (a.rhs != R) return fail(n, path, "premise succedent must match");
        for (std::size_t j = 0; j < nn; ++j) {
          const Formula& f = L[j];
          if (f.kind() != FKind::Prod || f.left().kind() != FKind::Prod) continue;
          if (a.lhs == splice(L, j, 1, {f.left().left(), f.left().right(), f.right()}))
            return true;
        }
        return fail(n, path, "no (D*E)*B position matches the premise");
      }

      default:
        return fail(n, path, "Hilbert-style rules do not appear in sequent trees");
    }
  }

  bool walk(const ProofPtr& p, std::vector<int>& path) {
    if (!p) {
      res.ok = false;
      res.path = path;
      res.message = "null proof node";
      return false;
    }
    if (!node_ok(*p, path)) return false;
    for (std::size_t i = 0; i < p->premises.size(); ++i) {
      path.push_back(static_cast<int>(i));
      if (!walk(p->premises[i], path)) return false;
      path.pop_back();
    }
    return true;
  }
};

}  // namespace

CheckResult check_proof(const ProofPtr& p, SystemId system, CheckOptions opts) {
  Checker c{system, opts, {}};
  std::vector<int> path;
  c.walk(p, path);
  return c.res;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

nlohmann::json proof_json_rec(const ProofPtr& p) {
  nlohmann::json j;
  j["seq"] = print_sequent(p->conclusion);
  j["rule"] = std::string(rule_name(p->rule));
  if (p->offset >= 0) j["offset"] = p->offset;
  auto arr = nlohmann::json::array();
  for (const auto& q : p->premises) arr.push_back(proof_json_rec(q));
  j["premises"] = std::move(arr);
  return j;
}

ProofPtr proof_from_json_rec(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("proof JSON: expected an object");
  if (!j.contains("seq") || !j["seq"].is_string())
    throw Error("proof JSON: missing \"seq\" string");
  if (!j.contains("rule") || !j["rule"].is_string())
    throw Error("proof JSON: missing \"rule\" string");
  auto rule = rule_from_name(j["rule"].get<std::string>());
  if (!rule) throw Error("proof JSON: unknown rule " + j["rule"].dump());
  int offset = -1;
  if (j.contains("offset")) {
    if (!j["offset"].is_number_integer()) throw Error("proof JSON: bad \"offset\"");
    offset = j["offset"].get<int>();
  }
  std::vector<ProofPtr> prems;
  if (j.contains("premises")) {
    if (!j["premises"].is_array()) throw Error("proof JSON: bad \"premises\"");
    for (const auto& q : j["premises"]) prems.push_back(proof_from_json_rec(q));
  }
  return make_proof(parse_sequent(j["seq"].get<std::string>()), *rule, std::move(prems),
                    offset);
}

}  // namespace

std::string proof_to_json(const ProofPtr& p, int indent) {
  return proof_json_rec(p).dump(indent);
}

ProofPtr proof_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("proof JSON: ") + e.what());
  }
  return proof_from_json_rec(j);
}

// ---------------------------------------------------------------------------
// LaTeX

namespace {

std::string latex_rule_label(RuleId r) {
  switch (r) {
    case RuleId::Ax: return "\\mathrm{Ax}";
    case RuleId::UnderL: return "\\backslash\\to";
    case RuleId::UnderR: return "\\to\\backslash";
    case RuleId::OverL: return "/\\to";
    case RuleId::OverR: return "\\to/";
    case RuleId::ProdL: return "\\cdot\\to";
    case RuleId::ProdR: return "\\to\\cdot";
    case RuleId::NeckR: return "\\to\\mathsf{c}";
    case RuleId::NeckL: return "\\mathsf{c}\\to";
    case RuleId::NeckRot: return "\\mathsf{c}";
    case RuleId::CS: return "\\mathrm{CS}";
    case RuleId::RevRev: return "{}^{\\mathsf{r}}\\to{}^{\\mathsf{r}}";
    case RuleId::RevRevL: return "{}^{\\mathsf{rr}}\\to";
    case RuleId::RevRevR: return "\\to{}^{\\mathsf{rr}}";
    case RuleId::BracR: return "\\to\\mathsf{b}";
    case RuleId::BracL: return "\\mathsf{b}\\to";
    case RuleId::BracRot: return "\\mathsf{b}";
    case RuleId::AxRevBrac: return "\\mathrm{Ax}^{\\mathsf{r}\\mathsf{b}}";
    case RuleId::Cut: return "\\mathrm{cut}";
    case RuleId::OverL2: return "(/\\to)_2";
    case RuleId::UnderOverL2: return "(\\backslash/\\to)_2";
    case RuleId::ProdR2: return "(\\to\\cdot)_2";
    case RuleId::ProdL2: return "(\\cdot\\to)_2";
    default: return "\\mathrm{H}";
  }
}

void latex_rec_proof(const ProofPtr& p, std::string& out) {
  out += "\\dfrac{";
  if (p->premises.empty()) {
    out += "\\mathstrut";
  } else {
    for (std::size_t i = 0; i < p->premises.size(); ++i) {
      if (i) out += "\\qquad ";
      latex_rec_proof(p->premises[i], out);
    }
  }
  out += "}{";
  out += latex_sequent(p->conclusion);
  out += "}\\,{\\scriptstyle(";
  out += latex_rule_label(p->rule);
  out += ")}";
}

}  // namespace

std::string proof_to_latex(const ProofPtr& p) {
  std::string out = "\\[\n";
  latex_rec_proof(p, out);
  out += "\n\\]\n";
  return out;
}

// ---------------------------------------------------------------------------
// Cut composition

ProofPtr cut_compose(const ProofPtr& left, const ProofPtr& right, int position) {
  if (!left || !right) throw Error("cut_compose: null proof");
  const Sequent& l = left->conclusion;
  const Sequent& r = right->conclusion;
  if (position < 0 || static_cast<std::size_t>(position) >= r.lhs.size())
    throw Error("cut_compose: position out of range");
  if (r.lhs[static_cast<std::size_t>(position)] != l.rhs)
    throw Error("cut_compose: cut formula mismatch at position " +
                std::to_string(position) + ": " + print_formula(l.rhs) + " vs " +
                print_formula(r.lhs[static_cast<std::size_t>(position)]));
  Sequent concl;
  concl.lhs = splice(r.lhs, static_cast<std::size_t>(position), 1, l.lhs);
  concl.rhs = r.rhs;
  return make_proof(std::move(concl), RuleId::Cut, {left, right}, position);
}

std::size_t proof_node_count(const ProofPtr& p) {
  if (!p) return 0;
  std::size_t n = 1;
  for (const auto& q : p->premises) n += proof_node_count(q);
  return n;
}

}  // namespace cyclam
