#pragma once

// Formula AST, parser and printer for the string-type systems.
//
// Types are built from primitive names with the two divisions, the product,
// and three unary postfix connectives written ^c (cyclic shift), ^r (reversal)
// and ^b (bracelet).  Values are immutable handles over shared nodes: copying
// is cheap, structural equality is hash-accelerated, and subtrees are shared
// freely across threads.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cyclam {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t offset);
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

enum class FKind : std::uint8_t { Prim, Under, Over, Prod, Shift, Rev, Brac };

class Formula {
public:
  Formula() = default;  // empty handle; using it is undefined, valid() is false

  static Formula prim(std::string name);
  // den \ num  (denominator on the left)
  static Formula under(Formula den, Formula num);
  // num / den  (denominator on the right)
  static Formula over(Formula num, Formula den);
  static Formula prod(Formula l, Formula r);
  static Formula shift(Formula a);  // A^c
  static Formula rev(Formula a);    // A^r
  static Formula brac(Formula a);   // A^b

  bool valid() const { return node_ != nullptr; }
  FKind kind() const;
  bool is(FKind k) const { return kind() == k; }
  bool is_binary() const;
  bool is_postfix() const;

  const std::string& prim_name() const;  // Prim only
  Formula left() const;                  // binary nodes
  Formula right() const;
  Formula child() const;  // postfix nodes
  // Division children by role: Under(den, num) = den\num, Over(num, den) = num/den.
  Formula numerator() const;
  Formula denominator() const;

  // Number of connective nodes (primitives count 0).
  int size() const;
  std::size_t hash() const;

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// A₁, ..., Aₙ -> B with nonempty antecedent.
struct Sequent {
  std::vector<Formula> lhs;
  Formula rhs;

  bool operator==(const Sequent& o) const;
  bool operator!=(const Sequent& o) const { return !(*this == o); }
  std::size_t hash() const;
};

struct SequentHash {
  std::size_t operator()(const Sequent& s) const { return s.hash(); }
};

// Text syntax.  Identifiers are [A-Za-z_][A-Za-z0-9_]*; the postfix markers
// bind tightest, then '*' (left-associative), then the divisions.  Chains of
// '/' associate to the left, chains of '\' to the right; mixing the two
// without parentheses is rejected.  Sequents are "F1, F2, ..., Fn -> G".
Formula parse_formula(std::string_view text);
Sequent parse_sequent(std::string_view text);

std::string print_formula(const Formula& f);
std::string print_sequent(const Sequent& s);
std::string latex_formula(const Formula& f);
std::string latex_sequent(const Sequent& s);

// Positional parity of subformula occurrences: the root is Even and parity
// flips exactly at division denominators.
enum class Parity : std::uint8_t { Even, Odd };
inline Parity flip(Parity p) { return p == Parity::Even ? Parity::Odd : Parity::Even; }

// Calls fn on every subformula occurrence (preorder) with its parity.
void visit_occurrences(const Formula& f,
                       const std::function<void(const Formula&, Parity)>& fn);

// A type is even-cyclic when no ^c occurrence is Odd, odd-cyclic when none is
// Even.  Both are defined on the ^c fragment only and throw on ^r/^b input.
bool is_even_cyclic(const Formula& f);
bool is_odd_cyclic(const Formula& f);

bool contains_kind(const Formula& f, FKind k);
bool contains_prim(const Formula& f, const std::string& name);

// Distinct subformulas, preorder first-occurrence order.
std::vector<Formula> subformulas(const Formula& f);

// The \/-swap dual: mirror(den\num) = mirror(num)/mirror(den),
// mirror(A·B) = mirror(B)·mirror(A); unary connectives are kept.
Formula mirror(const Formula& f);

enum class SystemId : std::uint8_t { L, LNeck, LCS, LRev, LBrac };

std::string_view system_name(SystemId sys);
std::optional<SystemId> system_from_name(std::string_view name);

// Connective fragments: L and LCS are plain (no postfix connectives), LNeck
// adds ^c, LRev adds ^r, LBrac allows ^r and ^b (never ^c).
bool fragment_ok(const Formula& f, SystemId sys);
bool fragment_ok(const Sequent& s, SystemId sys);
void require_fragment(const Sequent& s, SystemId sys);  // throws Error

}  // namespace cyclam
