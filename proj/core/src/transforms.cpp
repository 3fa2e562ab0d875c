#include "cyclam/transforms.hpp"

#include <cctype>

namespace cyclam {

std::string FreshSymbolPool::q(int k) const {
  if (k < 1) throw Error("fresh q-symbols are numbered from 1");
  return "__q" + std::to_string(k);
}

bool FreshSymbolPool::owns(const std::string& name) const {
  if (name == l || name == r) return true;
  if (name.size() < 4 || name.compare(0, 3, "__q") != 0) return false;
  if (name[3] == '0') return false;
  for (std::size_t i = 3; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  return true;
}

bool has_reserved_symbols(const Formula& f, const FreshSymbolPool& pool) {
  bool found = false;
  visit_occurrences(f, [&](const Formula& g, Parity) {
    if (g.kind() == FKind::Prim && pool.owns(g.prim_name())) found = true;
  });
  return found;
}

void require_fresh(const Formula& f, const FreshSymbolPool& pool) {
  if (has_reserved_symbols(f, pool))
    throw Error("formula mentions reserved generated symbols (__l, __r, __q1, ...)");
}

namespace {

Formula box_expansion(const Formula& f, const FreshSymbolPool& pool) {
  const Formula l = Formula::prim(pool.l);
  const Formula r = Formula::prim(pool.r);
  return Formula::over(Formula::under(l, Formula::prod(Formula::prod(l, f), r)), r);
}

// Shared walker for e_n / o_n; tower_parity says which occurrences of ^c
// receive the tower, the opposite parity receives a single box.
Formula tower_map(const Formula& f, int n, const FreshSymbolPool& pool,
                  Parity here, Parity tower_parity) {
  switch (f.kind()) {
    case FKind::Prim:
      return f;
    case FKind::Under:
      return Formula::under(tower_map(f.denominator(), n, pool, flip(here), tower_parity),
                            tower_map(f.numerator(), n, pool, here, tower_parity));
    case FKind::Over:
      return Formula::over(tower_map(f.numerator(), n, pool, here, tower_parity),
                           tower_map(f.denominator(), n, pool, flip(here), tower_parity));
    case FKind::Prod:
      return Formula::prod(tower_map(f.left(), n, pool, here, tower_parity),
                           tower_map(f.right(), n, pool, here, tower_parity));
    case FKind::Shift: {
      Formula body = tower_map(f.child(), n, pool, here, tower_parity);
      if (here != tower_parity) return box_expansion(body, pool);
      for (int i = 0; i < n; ++i) body = Formula::shift(box_expansion(body, pool));
      return body;
    }
    case FKind::Rev:
    case FKind::Brac:
      throw Error("tower maps are defined on the ^c fragment only");
  }
  throw Error("unreachable");
}

Formula tower_entry(const Formula& f, int n, const FreshSymbolPool& pool,
                    Parity tower_parity) {
  require_fresh(f, pool);
  if (!fragment_ok(f, SystemId::LNeck))
    throw Error("tower maps are defined on the ^c fragment only");
  if (f.size() > n)
    throw Error("tower maps require size(f) <= N, got size " + std::to_string(f.size()) +
                " with N = " + std::to_string(n));
  return tower_map(f, n, pool, Parity::Even, tower_parity);
}

}  // namespace

Formula box(const Formula& f, const FreshSymbolPool& pool) {
  require_fresh(f, pool);
  return box_expansion(f, pool);
}

Formula e_n(const Formula& f, int n, const FreshSymbolPool& pool) {
  return tower_entry(f, n, pool, Parity::Even);
}

Formula o_n(const Formula& f, int n, const FreshSymbolPool& pool) {
  return tower_entry(f, n, pool, Parity::Odd);
}

Formula unneck(const Formula& f) {
  switch (f.kind()) {
    case FKind::Prim: return f;
    case FKind::Under: return Formula::under(unneck(f.denominator()), unneck(f.numerator()));
    case FKind::Over: return Formula::over(unneck(f.numerator()), unneck(f.denominator()));
    case FKind::Prod: return Formula::prod(unneck(f.left()), unneck(f.right()));
    case FKind::Shift: return unneck(f.child());
    case FKind::Rev:
    case FKind::Brac: throw Error("unneck is defined on the ^c fragment only");
  }
  throw Error("unreachable");
}

Formula cal_A(const Formula& f) {
  switch (f.kind()) {
    case FKind::Prim: return f;
    case FKind::Under: return Formula::under(cal_S(f.denominator()), cal_A(f.numerator()));
    case FKind::Over: return Formula::over(cal_A(f.numerator()), cal_S(f.denominator()));
    case FKind::Prod: return Formula::prod(cal_A(f.left()), cal_A(f.right()));
    default: throw Error("cal_A expects a division-product formula");
  }
}

Formula cal_S(const Formula& f) {
  switch (f.kind()) {
    case FKind::Prim:
      return Formula::shift(f);
    case FKind::Under:
      return Formula::shift(Formula::under(cal_A(f.denominator()), cal_S(f.numerator())));
    case FKind::Over:
      return Formula::shift(Formula::over(cal_S(f.numerator()), cal_A(f.denominator())));
    case FKind::Prod:
      return Formula::shift(Formula::prod(cal_S(f.left()), cal_S(f.right())));
    default:
      throw Error("cal_S expects a division-product formula");
  }
}

Formula t_n(const Formula& f, int n, const FreshSymbolPool& pool) {
  require_fresh(f, pool);
  if (n < 0) throw Error("t_n expects n >= 0");
  Formula t = f;
  for (int k = 1; k <= n; ++k) {
    const Formula qk = Formula::prim(pool.q(k));
    t = Formula::prod(qk, Formula::over(t, qk));
  }
  return t;
}

}  // namespace cyclam
