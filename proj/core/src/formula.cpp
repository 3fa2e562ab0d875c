#include "cyclam/formula.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace cyclam {

ParseError::ParseError(const std::string& msg, std::size_t offset)
    : Error("parse error at byte " + std::to_string(offset) + ": " + msg),
      offset_(offset) {}

struct Formula::Node {
  FKind kind;
  std::string prim;  // Prim only
  std::shared_ptr<const Node> a, b;
  int size = 0;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  // splitmix-style combine; cheap and good enough for structural hashing
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace

Formula Formula::prim(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = FKind::Prim;
  n->prim = std::move(name);
  n->size = 0;
  n->hash = mix(std::hash<std::string>{}(n->prim), 0x11);
  return Formula(std::move(n));
}

Formula Formula::under(Formula den, Formula num) {
  auto n = std::make_shared<Node>();
  n->kind = FKind::Under;
  n->a = den.node_;
  n->b = num.node_;
  n->size = 1 + den.size() + num.size();
  n->hash = mix(mix(den.hash(), num.hash()), static_cast<std::size_t>(FKind::Under) + 0x21);
  return Formula(std::move(n));
}

Formula Formula::over(Formula num, Formula den) {
  auto n = std::make_shared<Node>();
  n->kind = FKind::Over;
  n->a = num.node_;
  n->b = den.node_;
  n->size = 1 + num.size() + den.size();
  n->hash = mix(mix(num.hash(), den.hash()), static_cast<std::size_t>(FKind::Over) + 0x21);
  return Formula(std::move(n));
}

Formula Formula::prod(Formula l, Formula r) {
  auto n = std::make_shared<Node>();
  n->kind = FKind::Prod;
  n->a = l.node_;
  n->b = r.node_;
  n->size = 1 + l.size() + r.size();
  n->hash = mix(mix(l.hash(), r.hash()), static_cast<std::size_t>(FKind::Prod) + 0x21);
  return Formula(std::move(n));
}

static std::size_t post_salt(FKind k) {
  return 0x31 + static_cast<std::size_t>(k) * 0x9e37;
}

Formula Formula::shift(Formula a) {
  auto n = std::make_shared<Node>();
  n->kind = FKind::Shift;
  n->a = a.node_;
  n->size = 1 + a.size();
  n->hash = mix(a.hash(), post_salt(FKind::Shift));
  return Formula(std::move(n));
}

Formula Formula::rev(Formula a) {
  auto n = std::make_shared<Node>();
  n->kind = FKind::Rev;
  n->a = a.node_;
  n->size = 1 + a.size();
  n->hash = mix(a.hash(), post_salt(FKind::Rev));
  return Formula(std::move(n));
}

Formula Formula::brac(Formula a) {
  auto n = std::make_shared<Node>();
  n->kind = FKind::Brac;
  n->a = a.node_;
  n->size = 1 + a.size();
  n->hash = mix(a.hash(), post_salt(FKind::Brac));
  return Formula(std::move(n));
}

FKind Formula::kind() const { return node_->kind; }

bool Formula::is_binary() const {
  FKind k = kind();
  return k == FKind::Under || k == FKind::Over || k == FKind::Prod;
}

bool Formula::is_postfix() const {
  FKind k = kind();
  return k == FKind::Shift || k == FKind::Rev || k == FKind::Brac;
}

const std::string& Formula::prim_name() const { return node_->prim; }
Formula Formula::left() const { return Formula(node_->a); }
Formula Formula::right() const { return Formula(node_->b); }
Formula Formula::child() const { return Formula(node_->a); }

Formula Formula::numerator() const {
  return kind() == FKind::Under ? right() : left();
}

Formula Formula::denominator() const {
  return kind() == FKind::Under ? left() : right();
}

int Formula::size() const { return node_->size; }
std::size_t Formula::hash() const { return node_->hash; }

bool Formula::operator==(const Formula& o) const {
  const Node* x = node_.get();
  const Node* y = o.node_.get();
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->hash != y->hash || x->kind != y->kind || x->size != y->size) return false;
  if (x->kind == FKind::Prim) return x->prim == y->prim;
  if (!Formula(x->a).operator==(Formula(y->a))) return false;
  if (x->b || y->b) {
    if (!x->b || !y->b) return false;
    return Formula(x->b) == Formula(y->b);
  }
  return true;
}

bool Sequent::operator==(const Sequent& o) const {
  return lhs == o.lhs && rhs == o.rhs;
}

std::size_t Sequent::hash() const {
  std::size_t h = 0x53455155u;
  for (const auto& f : lhs) h = mix(h, f.hash());
  h = mix(h, 0xA0);
  h = mix(h, rhs.hash());
  return h;
}

// ---------------------------------------------------------------------------
// Lexer / parser

namespace {

enum class Tok : std::uint8_t {
  Ident, LPar, RPar, Star, Under, Over, PostC, PostR, PostB, Comma, Arrow, End
};

struct Token {
  Tok tok;
  std::string text;  // Ident only
  std::size_t offset;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_id_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_id_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t at = i;
    if (is_id_start(c)) {
      std::size_t j = i + 1;
      while (j < s.size() && is_id_char(s[j])) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), at});
      i = j;
      continue;
    }
    switch (c) {
      case '(': out.push_back({Tok::LPar, "", at}); ++i; break;
      case ')': out.push_back({Tok::RPar, "", at}); ++i; break;
      case '*': out.push_back({Tok::Star, "", at}); ++i; break;
      case '\\': out.push_back({Tok::Under, "", at}); ++i; break;
      case '/': out.push_back({Tok::Over, "", at}); ++i; break;
      case ',': out.push_back({Tok::Comma, "", at}); ++i; break;
      case '^': {
        if (i + 1 >= s.size()) throw ParseError("dangling '^'", at);
        char m = s[i + 1];
        if (m == 'c') out.push_back({Tok::PostC, "", at});
        else if (m == 'r') out.push_back({Tok::PostR, "", at});
        else if (m == 'b') out.push_back({Tok::PostB, "", at});
        else throw ParseError("expected 'c', 'r' or 'b' after '^'", at + 1);
        // the marker letter must not run into an identifier (e.g. "p^cx")
        if (i + 2 < s.size() && is_id_char(s[i + 2]))
          throw ParseError("unknown postfix marker", at);
        i += 2;
        break;
      }
      case '-': {
        if (i + 1 < s.size() && s[i + 1] == '>') {
          out.push_back({Tok::Arrow, "", at});
          i += 2;
          break;
        }
        throw ParseError("expected '->'", at);
      }
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", at);
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Formula formula_all() {
    Formula f = formula();
    expect(Tok::End, "end of input");
    return f;
  }

  Sequent sequent_all() {
    Sequent s;
    if (peek().tok == Tok::Arrow)
      throw ParseError("empty antecedent", peek().offset);
    s.lhs.push_back(formula());
    while (peek().tok == Tok::Comma) {
      ++pos_;
      s.lhs.push_back(formula());
    }
    expect(Tok::Arrow, "'->'");
    s.rhs = formula();
    expect(Tok::End, "end of input");
    return s;
  }

private:
  const Token& peek() const { return toks_[pos_]; }

  void expect(Tok t, const char* what) {
    if (peek().tok != t)
      throw ParseError(std::string("expected ") + what, peek().offset);
    ++pos_;
  }

  Formula formula() {
    Formula first = product();
    Tok op = peek().tok;
    if (op != Tok::Under && op != Tok::Over) return first;
    std::vector<Formula> parts{first};
    std::size_t mixed_at = 0;
    bool mixed = false;
    while (peek().tok == Tok::Under || peek().tok == Tok::Over) {
      if (peek().tok != op) {
        mixed = true;
        mixed_at = peek().offset;
      }
      ++pos_;
      parts.push_back(product());
    }
    if (mixed)
      throw ParseError("mixed '\\' and '/' chain requires parentheses", mixed_at);
    if (op == Tok::Over) {
      // (a / b) / c
      Formula acc = parts[0];
      for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::over(acc, parts[i]);
      return acc;
    }
    // a \ (b \ c)
    Formula acc = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;) acc = Formula::under(parts[i], acc);
    return acc;
  }

  Formula product() {
    Formula acc = postfixed();
    while (peek().tok == Tok::Star) {
      ++pos_;
      acc = Formula::prod(acc, postfixed());
    }
    return acc;
  }

  Formula postfixed() {
    Formula acc = atom();
    for (;;) {
      Tok t = peek().tok;
      if (t == Tok::PostC) acc = Formula::shift(acc);
      else if (t == Tok::PostR) acc = Formula::rev(acc);
      else if (t == Tok::PostB) acc = Formula::brac(acc);
      else break;
      ++pos_;
    }
    return acc;
  }

  Formula atom() {
    const Token& t = peek();
    if (t.tok == Tok::Ident) {
      ++pos_;
      return Formula::prim(t.text);
    }
    if (t.tok == Tok::LPar) {
      ++pos_;
      Formula f = formula();
      expect(Tok::RPar, "')'");
      return f;
    }
    throw ParseError("expected a type", t.offset);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).formula_all(); }
Sequent parse_sequent(std::string_view text) { return Parser(text).sequent_all(); }

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_rec(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FKind::Prim:
      out += f.prim_name();
      return;
    case FKind::Under:
    case FKind::Over:
    case FKind::Prod: {
      const char* op = f.kind() == FKind::Under ? " \\ "
                       : f.kind() == FKind::Over ? " / "
                                                 : " * ";
      out += '(';
      print_rec(f.left(), out);
      out += op;
      print_rec(f.right(), out);
      out += ')';
      return;
    }
    case FKind::Shift:
    case FKind::Rev:
    case FKind::Brac: {
      Formula c = f.child();
      // binaries carry their own parentheses; a postfix operand needs extra ones
      if (c.is_postfix()) {
        out += '(';
        print_rec(c, out);
        out += ')';
      } else {
        print_rec(c, out);
      }
      out += f.kind() == FKind::Shift ? "^c" : f.kind() == FKind::Rev ? "^r" : "^b";
      return;
    }
  }
}

void latex_rec(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FKind::Prim: {
      // multi-char names typeset upright
      if (f.prim_name().size() == 1) out += f.prim_name();
      else out += "\\mathit{" + f.prim_name() + "}";
      return;
    }
    case FKind::Under:
    case FKind::Over:
    case FKind::Prod: {
      const char* op = f.kind() == FKind::Under ? "\\backslash "
                       : f.kind() == FKind::Over ? "/"
                                                 : "\\cdot ";
      out += '(';
      latex_rec(f.left(), out);
      out += op;
      latex_rec(f.right(), out);
      out += ')';
      return;
    }
    case FKind::Shift:
    case FKind::Rev:
    case FKind::Brac: {
      Formula c = f.child();
      if (c.is_postfix()) {
        out += '(';
        latex_rec(c, out);
        out += ')';
      } else {
        latex_rec(c, out);
      }
      out += f.kind() == FKind::Shift ? "^{\\mathsf{c}}"
             : f.kind() == FKind::Rev ? "^{\\mathsf{r}}"
                                      : "^{\\mathsf{b}}";
      return;
    }
  }
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  print_rec(f, out);
  return out;
}

std::string print_sequent(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.lhs.size(); ++i) {
    if (i) out += ", ";
    out += print_formula(s.lhs[i]);
  }
  out += " -> ";
  out += print_formula(s.rhs);
  return out;
}

std::string latex_formula(const Formula& f) {
  std::string out;
  latex_rec(f, out);
  return out;
}

std::string latex_sequent(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.lhs.size(); ++i) {
    if (i) out += ", ";
    out += latex_formula(s.lhs[i]);
  }
  out += " \\to ";
  out += latex_formula(s.rhs);
  return out;
}

// ---------------------------------------------------------------------------
// Occurrence parity and cyclicity predicates

namespace {

void visit_rec(const Formula& f, Parity p,
               const std::function<void(const Formula&, Parity)>& fn) {
  fn(f, p);
  switch (f.kind()) {
    case FKind::Prim:
      return;
    case FKind::Under:
    case FKind::Over:
      visit_rec(f.numerator(), p, fn);
      visit_rec(f.denominator(), flip(p), fn);
      return;
    case FKind::Prod:
      visit_rec(f.left(), p, fn);
      visit_rec(f.right(), p, fn);
      return;
    case FKind::Shift:
    case FKind::Rev:
    case FKind::Brac:
      visit_rec(f.child(), p, fn);
      return;
  }
}

bool cyclic_check(const Formula& f, Parity forbidden) {
  if (contains_kind(f, FKind::Rev) || contains_kind(f, FKind::Brac))
    throw Error("cyclicity predicates are defined on the ^c fragment only: " +
                print_formula(f));
  bool ok = true;
  visit_occurrences(f, [&](const Formula& g, Parity p) {
    if (g.kind() == FKind::Shift && p == forbidden) ok = false;
  });
  return ok;
}

}  // namespace

void visit_occurrences(const Formula& f,
                       const std::function<void(const Formula&, Parity)>& fn) {
  visit_rec(f, Parity::Even, fn);
}

bool is_even_cyclic(const Formula& f) { return cyclic_check(f, Parity::Odd); }
bool is_odd_cyclic(const Formula& f) { return cyclic_check(f, Parity::Even); }

bool contains_kind(const Formula& f, FKind k) {
  if (f.kind() == k) return true;
  switch (f.kind()) {
    case FKind::Prim: return false;
    case FKind::Under:
    case FKind::Over:
    case FKind::Prod:
      return contains_kind(f.left(), k) || contains_kind(f.right(), k);
    default:
      return contains_kind(f.child(), k);
  }
}

bool contains_prim(const Formula& f, const std::string& name) {
  switch (f.kind()) {
    case FKind::Prim: return f.prim_name() == name;
    case FKind::Under:
    case FKind::Over:
    case FKind::Prod:
      return contains_prim(f.left(), name) || contains_prim(f.right(), name);
    default:
      return contains_prim(f.child(), name);
  }
}

namespace {

void collect_subformulas(const Formula& f, std::vector<Formula>& out,
                         std::unordered_set<Formula, FormulaHash>& seen) {
  if (seen.insert(f).second) out.push_back(f);
  switch (f.kind()) {
    case FKind::Prim: return;
    case FKind::Under:
    case FKind::Over:
    case FKind::Prod:
      collect_subformulas(f.left(), out, seen);
      collect_subformulas(f.right(), out, seen);
      return;
    default:
      collect_subformulas(f.child(), out, seen);
      return;
  }
}

}  // namespace

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash> seen;
  collect_subformulas(f, out, seen);
  return out;
}

Formula mirror(const Formula& f) {
  switch (f.kind()) {
    case FKind::Prim: return f;
    case FKind::Under:  // den\num  ->  mirror(num)/mirror(den)
      return Formula::over(mirror(f.numerator()), mirror(f.denominator()));
    case FKind::Over:  // num/den  ->  mirror(den)\mirror(num)
      return Formula::under(mirror(f.denominator()), mirror(f.numerator()));
    case FKind::Prod:
      return Formula::prod(mirror(f.right()), mirror(f.left()));
    case FKind::Shift: return Formula::shift(mirror(f.child()));
    case FKind::Rev: return Formula::rev(mirror(f.child()));
    case FKind::Brac: return Formula::brac(mirror(f.child()));
  }
  throw Error("unreachable");
}

// ---------------------------------------------------------------------------
// Systems and fragments

std::string_view system_name(SystemId sys) {
  switch (sys) {
    case SystemId::L: return "L";
    case SystemId::LNeck: return "Lneck";
    case SystemId::LCS: return "Lcs";
    case SystemId::LRev: return "Lrev";
    case SystemId::LBrac: return "Lbrac";
  }
  return "?";
}

std::optional<SystemId> system_from_name(std::string_view name) {
  std::string low;
  low.reserve(name.size());
  for (char c : name) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (low == "l") return SystemId::L;
  if (low == "lneck") return SystemId::LNeck;
  if (low == "lcs") return SystemId::LCS;
  if (low == "lrev") return SystemId::LRev;
  if (low == "lbrac") return SystemId::LBrac;
  return std::nullopt;
}

bool fragment_ok(const Formula& f, SystemId sys) {
  bool c = contains_kind(f, FKind::Shift);
  bool r = contains_kind(f, FKind::Rev);
  bool b = contains_kind(f, FKind::Brac);
  switch (sys) {
    case SystemId::L:
    case SystemId::LCS: return !c && !r && !b;
    case SystemId::LNeck: return !r && !b;
    case SystemId::LRev: return !c && !b;
    case SystemId::LBrac: return !c;
  }
  return false;
}

bool fragment_ok(const Sequent& s, SystemId sys) {
  for (const auto& f : s.lhs)
    if (!fragment_ok(f, sys)) return false;
  return fragment_ok(s.rhs, sys);
}

void require_fragment(const Sequent& s, SystemId sys) {
  if (!fragment_ok(s, sys))
    throw Error("sequent " + print_sequent(s) + " is outside the " +
                std::string(system_name(sys)) + " fragment");
}

}  // namespace cyclam
