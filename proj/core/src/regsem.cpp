#include <cyclam/regsem.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <utility>

#include "json.hpp"

namespace cyclam {

namespace {

// Automata below this size pass through shrink() unchanged; larger
// intermediate results of interpret() and lang_cyclic_shift() are minimized
// so that the later subset constructions stay within kStateLimit.  Kept
// small: the cyclic-shift construction squares the state count, so feeding
// it a reduced machine is much cheaper than reducing its output.
constexpr int kShrinkThreshold = 12;

void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool intersects(const std::vector<int>& a, const std::vector<int>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    (*i < *j) ? ++i : ++j;
  }
  return false;
}

bool subset_list(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void require_same_alphabet(const Automaton& a, const Automaton& b) {
  if (a.alphabet != b.alphabet) throw Error("automaton alphabet mismatch");
}

// adj[from][sym] = sorted target list.
using Adjacency = std::vector<std::vector<std::vector<int>>>;

Adjacency adjacency(const Automaton& a) {
  Adjacency adj(a.states, std::vector<std::vector<int>>(a.alphabet.size()));
  for (const auto& e : a.delta) adj[e[0]][e[1]].push_back(e[2]);
  return adj;
}

std::vector<int> set_image(const Adjacency& adj, const std::vector<int>& set,
                           int sym) {
  std::vector<int> out;
  for (int s : set)
    out.insert(out.end(), adj[s][sym].begin(), adj[s][sym].end());
  sort_unique(out);
  return out;
}

// Subset construction over `adj` starting from `start`, acceptance decided
// by `accept_set`.  Yields a complete single-initial deterministic
// automaton; the empty subset acts as the dead state when reached.
Automaton power_walk(const std::vector<std::string>& alphabet,
                     const Adjacency& adj, const std::vector<int>& start,
                     const std::function<bool(const std::vector<int>&)>&
                         accept_set) {
  const int nsym = static_cast<int>(alphabet.size());
  std::map<std::vector<int>, int> ids;
  std::deque<std::vector<int>> queue;
  Automaton out;
  out.alphabet = alphabet;
  out.initial = {0};
  ids.emplace(start, 0);
  queue.push_back(start);
  if (accept_set(start)) out.accepting.push_back(0);
  while (!queue.empty()) {
    std::vector<int> cur = std::move(queue.front());
    queue.pop_front();
    const int cur_id = ids.at(cur);
    for (int sym = 0; sym < nsym; ++sym) {
      std::vector<int> nxt = set_image(adj, cur, sym);
      auto [it, inserted] = ids.emplace(nxt, static_cast<int>(ids.size()));
      if (inserted) {
        if (static_cast<int>(ids.size()) > kStateLimit)
          throw Error("state limit exceeded (10000 states) during "
                      "determinization");
        if (accept_set(nxt)) out.accepting.push_back(it->second);
        queue.push_back(nxt);
      }
      out.delta.push_back({cur_id, sym, it->second});
    }
  }
  out.states = static_cast<int>(ids.size());
  sort_unique(out.accepting);
  std::sort(out.delta.begin(), out.delta.end());
  return out;
}

std::uint32_t draw(std::mt19937& rng, std::uint32_t lo, std::uint32_t hi) {
  return lo + rng() % (hi - lo + 1);
}

bool coin(std::mt19937& rng) { return (rng() & 1u) != 0; }

}  // namespace

Automaton make_automaton(std::vector<std::string> alphabet, int states,
                         std::vector<int> initial, std::vector<int> accepting,
                         std::vector<std::array<int, 3>> delta) {
  if (states < 0) throw Error("automaton state count must be >= 0");
  for (const auto& sym : alphabet)
    if (sym.empty()) throw Error("automaton alphabet symbols must be nonempty");

  // Sort the alphabet and remap symbol indices accordingly.
  std::vector<int> order(alphabet.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return alphabet[x] < alphabet[y]; });
  std::vector<int> remap(alphabet.size());
  std::vector<std::string> sorted;
  sorted.reserve(alphabet.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    if (pos > 0 && alphabet[order[pos]] == alphabet[order[pos - 1]])
      throw Error("duplicate alphabet symbol '" + alphabet[order[pos]] + "'");
    remap[order[pos]] = static_cast<int>(pos);
    sorted.push_back(alphabet[order[pos]]);
  }

  auto check_state = [&](int q) {
    if (q < 0 || q >= states)
      throw Error("automaton state id " + std::to_string(q) +
                  " out of range [0, " + std::to_string(states) + ")");
  };
  for (int q : initial) check_state(q);
  for (int q : accepting) check_state(q);
  for (auto& e : delta) {
    check_state(e[0]);
    check_state(e[2]);
    if (e[1] < 0 || e[1] >= static_cast<int>(alphabet.size()))
      throw Error("automaton transition symbol index out of range");
    e[1] = remap[e[1]];
  }

  Automaton a;
  a.alphabet = std::move(sorted);
  a.states = states;
  a.initial = std::move(initial);
  a.accepting = std::move(accepting);
  a.delta = std::move(delta);
  sort_unique(a.initial);
  sort_unique(a.accepting);
  std::sort(a.delta.begin(), a.delta.end());
  a.delta.erase(std::unique(a.delta.begin(), a.delta.end()), a.delta.end());
  return a;
}

Automaton finite_automaton(const std::vector<std::string>& alphabet,
                           const std::vector<std::vector<std::string>>& words) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    index.emplace(alphabet[i], static_cast<int>(i));
  int states = 1;
  std::vector<int> accepting;
  std::vector<std::array<int, 3>> delta;
  for (const auto& word : words) {
    int cur = 0;
    for (const auto& sym : word) {
      auto it = index.find(sym);
      if (it == index.end())
        throw Error("symbol '" + sym + "' is not in the automaton alphabet");
      delta.push_back({cur, it->second, states});
      cur = states++;
    }
    accepting.push_back(cur);
  }
  return make_automaton(alphabet, states, {0}, std::move(accepting),
                        std::move(delta));
}

Automaton universal_automaton(std::vector<std::string> alphabet) {
  std::vector<std::array<int, 3>> delta;
  for (int i = 0; i < static_cast<int>(alphabet.size()); ++i)
    delta.push_back({0, i, 0});
  return make_automaton(std::move(alphabet), 1, {0}, {0}, std::move(delta));
}

Automaton empty_automaton(std::vector<std::string> alphabet) {
  return make_automaton(std::move(alphabet), 1, {0}, {}, {});
}

bool accepts(const Automaton& a, const std::vector<std::string>& word) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < a.alphabet.size(); ++i)
    index.emplace(a.alphabet[i], static_cast<int>(i));
  Adjacency adj = adjacency(a);
  std::vector<int> cur = a.initial;
  for (const auto& sym : word) {
    auto it = index.find(sym);
    if (it == index.end())
      throw Error("symbol '" + sym + "' is not in the automaton alphabet");
    cur = set_image(adj, cur, it->second);
    if (cur.empty()) return false;
  }
  return intersects(cur, a.accepting);
}

bool lang_empty(const Automaton& a) {
  Adjacency adj = adjacency(a);
  std::vector<bool> seen(a.states, false);
  std::deque<int> queue;
  for (int q : a.initial) {
    seen[q] = true;
    queue.push_back(q);
  }
  std::vector<int> acc = a.accepting;
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    if (std::binary_search(acc.begin(), acc.end(), q)) return false;
    for (const auto& per_sym : adj[q])
      for (int t : per_sym)
        if (!seen[t]) {
          seen[t] = true;
          queue.push_back(t);
        }
  }
  return true;
}

std::vector<std::vector<std::string>> enumerate_words(const Automaton& a,
                                                      int max_len) {
  Adjacency adj = adjacency(a);
  std::vector<std::vector<std::string>> out;
  if (intersects(a.initial, a.accepting)) out.push_back({});
  struct Entry {
    std::vector<std::string> word;
    std::vector<int> set;
  };
  std::vector<Entry> layer{{{}, a.initial}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Entry> next;
    for (const auto& entry : layer) {
      for (std::size_t sym = 0; sym < a.alphabet.size(); ++sym) {
        std::vector<int> img = set_image(adj, entry.set, static_cast<int>(sym));
        if (img.empty()) continue;
        Entry e{entry.word, std::move(img)};
        e.word.push_back(a.alphabet[sym]);
        if (intersects(e.set, a.accepting)) out.push_back(e.word);
        next.push_back(std::move(e));
      }
    }
    layer = std::move(next);
    if (layer.empty()) break;
  }
  return out;
}

Automaton lang_concat(const Automaton& a, const Automaton& b) {
  require_same_alphabet(a, b);
  const int shift = a.states;
  Automaton out;
  out.alphabet = a.alphabet;
  out.states = a.states + b.states;
  const bool a_eps = intersects(a.initial, a.accepting);
  const bool b_eps = intersects(b.initial, b.accepting);

  out.initial = a.initial;
  if (a_eps)
    for (int q : b.initial) out.initial.push_back(q + shift);

  for (int q : b.accepting) out.accepting.push_back(q + shift);
  if (b_eps)
    for (int q : a.accepting) out.accepting.push_back(q);

  out.delta = a.delta;
  for (const auto& e : b.delta)
    out.delta.push_back({e[0] + shift, e[1], e[2] + shift});
  // Bridge: leaving an accepting state of `a` with the first step of `b`.
  std::vector<int> b_init = b.initial;
  for (const auto& e : b.delta)
    if (std::binary_search(b_init.begin(), b_init.end(), e[0]))
      for (int f : a.accepting) out.delta.push_back({f, e[1], e[2] + shift});

  sort_unique(out.initial);
  sort_unique(out.accepting);
  std::sort(out.delta.begin(), out.delta.end());
  out.delta.erase(std::unique(out.delta.begin(), out.delta.end()),
                  out.delta.end());
  return out;
}

Automaton lang_union(const Automaton& a, const Automaton& b) {
  require_same_alphabet(a, b);
  const int shift = a.states;
  Automaton out;
  out.alphabet = a.alphabet;
  out.states = a.states + b.states;
  out.initial = a.initial;
  for (int q : b.initial) out.initial.push_back(q + shift);
  out.accepting = a.accepting;
  for (int q : b.accepting) out.accepting.push_back(q + shift);
  out.delta = a.delta;
  for (const auto& e : b.delta)
    out.delta.push_back({e[0] + shift, e[1], e[2] + shift});
  sort_unique(out.initial);
  sort_unique(out.accepting);
  std::sort(out.delta.begin(), out.delta.end());
  return out;
}

Automaton lang_reverse(const Automaton& a) {
  Automaton out;
  out.alphabet = a.alphabet;
  out.states = a.states;
  out.initial = a.accepting;
  out.accepting = a.initial;
  for (const auto& e : a.delta) out.delta.push_back({e[2], e[1], e[0]});
  std::sort(out.delta.begin(), out.delta.end());
  out.delta.erase(std::unique(out.delta.begin(), out.delta.end()),
                  out.delta.end());
  return out;
}

Automaton lang_cyclic_shift(const Automaton& a) {
  // { vu : uv in L } as the union over states q of
  // (language q -> accepting) . (language initial -> q).  The raw union has
  // 2*states^2 states, which determinizes poorly, so oversized intermediate
  // machines are minimized along the way (the language is unaffected).
  Automaton base = a.states > kShrinkThreshold ? minimize(a) : a;
  Automaton out = empty_automaton(base.alphabet);
  for (int q = 0; q < base.states; ++q) {
    Automaton tail = base;  // runs v: from q to an accepting state
    tail.initial = {q};
    Automaton head = base;  // runs u: from an initial state to q
    head.accepting = {q};
    Automaton part = lang_concat(tail, head);
    if (part.states > kShrinkThreshold) part = minimize(part);
    out = lang_union(out, part);
    if (out.states > kShrinkThreshold) out = minimize(out);
  }
  return out;
}

Automaton determinize(const Automaton& a) {
  Adjacency adj = adjacency(a);
  const std::vector<int>& acc = a.accepting;
  return power_walk(a.alphabet, adj, a.initial,
                    [&acc](const std::vector<int>& set) {
                      return intersects(set, acc);
                    });
}

Automaton minimize(const Automaton& a) {
  // Determinize, then merge language-equivalent states by partition
  // refinement; the result is the minimal complete deterministic automaton.
  Automaton d = determinize(a);
  const int n = d.states;
  const int nsym = static_cast<int>(d.alphabet.size());
  std::vector<std::vector<int>> next(n, std::vector<int>(nsym, -1));
  for (const auto& e : d.delta) next[e[0]][e[1]] = e[2];

  std::vector<int> cls(n, 0);
  for (int q : d.accepting) cls[q] = 1;
  int classes = d.accepting.empty() || static_cast<int>(d.accepting.size()) == n
                    ? 1
                    : 2;
  for (;;) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> refined(n);
    for (int q = 0; q < n; ++q) {
      std::vector<int> sig{cls[q]};
      for (int sym = 0; sym < nsym; ++sym) sig.push_back(cls[next[q][sym]]);
      refined[q] = ids.emplace(std::move(sig), static_cast<int>(ids.size()))
                       .first->second;
    }
    const int count = static_cast<int>(ids.size());
    cls = std::move(refined);
    if (count == classes) break;
    classes = count;
  }

  Automaton out;
  out.alphabet = d.alphabet;
  out.states = classes;
  out.initial = {cls[d.initial.at(0)]};
  for (int q : d.accepting) out.accepting.push_back(cls[q]);
  for (int q = 0; q < n; ++q)
    for (int sym = 0; sym < nsym; ++sym)
      out.delta.push_back({cls[q], sym, cls[next[q][sym]]});
  sort_unique(out.accepting);
  std::sort(out.delta.begin(), out.delta.end());
  out.delta.erase(std::unique(out.delta.begin(), out.delta.end()),
                  out.delta.end());
  return out;
}

Automaton lang_left_residual(const Automaton& b, const Automaton& a,
                             bool* vacuous) {
  require_same_alphabet(b, a);
  Automaton d = determinize(a);
  Adjacency d_adj = adjacency(d);
  Adjacency b_adj = adjacency(b);
  const int nsym = static_cast<int>(d.alphabet.size());

  // R: states of the determinized `a` reachable from its initial state by
  // some word of L(b), found by a product walk with `b`.
  std::set<std::pair<int, int>> seen;
  std::deque<std::pair<int, int>> queue;
  const int d0 = d.initial.at(0);
  for (int ib : b.initial)
    if (seen.emplace(ib, d0).second) queue.push_back({ib, d0});
  std::vector<int> reach;
  while (!queue.empty()) {
    auto [qb, qd] = queue.front();
    queue.pop_front();
    if (std::binary_search(b.accepting.begin(), b.accepting.end(), qb))
      reach.push_back(qd);
    for (int sym = 0; sym < nsym; ++sym) {
      const int td = d_adj[qd][sym].at(0);
      for (int tb : b_adj[qb][sym])
        if (seen.emplace(tb, td).second) queue.push_back({tb, td});
    }
  }
  sort_unique(reach);
  if (vacuous && reach.empty()) *vacuous = true;

  // Accept u iff u leads from every state of R to acceptance; tracking the
  // set of current states suffices because d is deterministic.
  const std::vector<int>& acc = d.accepting;
  return power_walk(d.alphabet, d_adj, reach,
                    [&acc](const std::vector<int>& set) {
                      return subset_list(set, acc);
                    });
}

Automaton lang_right_residual(const Automaton& a, const Automaton& b,
                              bool* vacuous) {
  // u in A/B iff reverse(u) in reverse(B) \ reverse(A).
  return lang_reverse(
      lang_left_residual(lang_reverse(b), lang_reverse(a), vacuous));
}

std::optional<std::vector<std::string>> lang_difference_witness(
    const Automaton& a, const Automaton& b) {
  require_same_alphabet(a, b);
  // Only the right side needs determinizing: a word of L(a)\L(b) is found
  // by pairing single states of the left NFA (the existential side) with
  // the one run of the determinized right side.
  Automaton db = determinize(b);
  Adjacency adj_a = adjacency(a);
  Adjacency adj_b = adjacency(db);
  const int nsym = static_cast<int>(db.alphabet.size());

  // Breadth-first over the product, so the first hit is a shortest witness.
  std::map<std::pair<int, int>, std::pair<std::pair<int, int>, int>> parent;
  std::deque<std::pair<int, int>> queue;
  std::set<std::pair<int, int>> seen;
  const int d0 = db.initial.at(0);
  for (int qa : a.initial) {
    seen.emplace(qa, d0);
    queue.push_back({qa, d0});
  }
  auto witness_at = [&](std::pair<int, int> cur) {
    std::vector<std::string> word;
    while (parent.count(cur)) {
      auto [prev, sym] = parent.at(cur);
      word.push_back(db.alphabet[sym]);
      cur = prev;
    }
    std::reverse(word.begin(), word.end());
    return word;
  };
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    const bool in_a = std::binary_search(a.accepting.begin(),
                                         a.accepting.end(), cur.first);
    const bool in_b = std::binary_search(db.accepting.begin(),
                                         db.accepting.end(), cur.second);
    if (in_a && !in_b) return witness_at(cur);
    for (int sym = 0; sym < nsym; ++sym) {
      const int tb = adj_b[cur.second][sym].at(0);
      for (int ta : adj_a[cur.first][sym]) {
        std::pair<int, int> nxt{ta, tb};
        if (seen.insert(nxt).second) {
          parent.emplace(nxt, std::make_pair(cur, sym));
          queue.push_back(nxt);
        }
      }
    }
  }
  return std::nullopt;
}

bool lang_subset(const Automaton& a, const Automaton& b) {
  return !lang_difference_witness(a, b).has_value();
}

bool lang_equivalent(const Automaton& a, const Automaton& b) {
  Automaton ma = minimize(a);
  Automaton mb = minimize(b);
  return lang_subset(ma, mb) && lang_subset(mb, ma);
}

std::string automaton_to_json(const Automaton& a, int indent) {
  nlohmann::json j;
  j["alphabet"] = a.alphabet;
  j["states"] = a.states;
  j["initial"] = a.initial;
  j["accepting"] = a.accepting;
  nlohmann::json delta = nlohmann::json::array();
  for (const auto& e : a.delta)
    delta.push_back({e[0], a.alphabet[e[1]], e[2]});
  j["delta"] = std::move(delta);
  return indent < 0 ? j.dump() : j.dump(indent);
}

Automaton automaton_from_json(const std::string& text) {
  try {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<std::string> alphabet =
        j.at("alphabet").get<std::vector<std::string>>();
    int states = j.at("states").get<int>();
    std::vector<int> initial = j.at("initial").get<std::vector<int>>();
    std::vector<int> accepting = j.at("accepting").get<std::vector<int>>();
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      index.emplace(alphabet[i], static_cast<int>(i));
    std::vector<std::array<int, 3>> delta;
    for (const auto& entry : j.at("delta")) {
      if (!entry.is_array() || entry.size() != 3)
        throw Error("automaton delta entries must be [from, symbol, to]");
      std::string sym = entry.at(1).get<std::string>();
      auto it = index.find(sym);
      if (it == index.end())
        throw Error("symbol '" + sym + "' is not in the automaton alphabet");
      delta.push_back(
          {entry.at(0).get<int>(), it->second, entry.at(2).get<int>()});
    }
    return make_automaton(std::move(alphabet), states, std::move(initial),
                          std::move(accepting), std::move(delta));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid automaton JSON: ") + e.what());
  }
}

std::string_view epsilon_mode_name(EpsilonMode mode) {
  return mode == EpsilonMode::Forbid ? "forbid" : "allow";
}

void validate_interpretation(const Interpretation& m) {
  const Automaton* first = nullptr;
  for (const auto& [name, automaton] : m.primitives) {
    if (first == nullptr)
      first = &automaton;
    else if (automaton.alphabet != first->alphabet)
      throw Error("interpretation automata must share one alphabet");
    if (m.epsilon_mode == EpsilonMode::Forbid &&
        intersects(automaton.initial, automaton.accepting))
      throw Error("interpretation of '" + name +
                  "' accepts the empty word (epsilon mode is forbid)");
  }
}

namespace {

Automaton shrink(Automaton a) {
  return a.states > kShrinkThreshold ? minimize(a) : std::move(a);
}

Automaton eval(const Formula& f, const Interpretation& m, bool* vacuous) {
  switch (f.kind()) {
    case FKind::Prim: {
      auto it = m.primitives.find(f.prim_name());
      if (it == m.primitives.end())
        throw Error("primitive '" + f.prim_name() +
                    "' has no interpretation");
      return it->second;
    }
    case FKind::Under:
      return shrink(lang_left_residual(eval(f.denominator(), m, vacuous),
                                       eval(f.numerator(), m, vacuous),
                                       vacuous));
    case FKind::Over:
      return shrink(lang_right_residual(eval(f.numerator(), m, vacuous),
                                        eval(f.denominator(), m, vacuous),
                                        vacuous));
    case FKind::Prod:
      return shrink(
          lang_concat(eval(f.left(), m, vacuous), eval(f.right(), m, vacuous)));
    case FKind::Shift:
      return shrink(lang_cyclic_shift(eval(f.child(), m, vacuous)));
    case FKind::Rev:
      return shrink(lang_reverse(eval(f.child(), m, vacuous)));
    case FKind::Brac: {
      Automaton x = eval(f.child(), m, vacuous);
      return shrink(lang_union(lang_cyclic_shift(x),
                               lang_cyclic_shift(lang_reverse(x))));
    }
  }
  throw Error("interpret: unknown formula kind");
}

}  // namespace

Automaton interpret(const Formula& f, const Interpretation& m, bool* vacuous) {
  validate_interpretation(m);
  return eval(f, m, vacuous);
}

bool holds(const Sequent& s, const Interpretation& m, bool* vacuous) {
  validate_interpretation(m);
  if (s.lhs.empty()) throw Error("sequent antecedent is empty");
  Automaton lhs = eval(s.lhs.front(), m, vacuous);
  for (std::size_t i = 1; i < s.lhs.size(); ++i)
    lhs = shrink(lang_concat(lhs, eval(s.lhs[i], m, vacuous)));
  return lang_subset(lhs, eval(s.rhs, m, vacuous));
}

namespace {

Automaton sample_automaton(std::mt19937& rng,
                           const std::vector<std::string>& alphabet,
                           int max_states, EpsilonMode mode) {
  // In forbid mode a one-state machine could only denote the empty
  // language, so draw at least two states whenever the budget allows.
  const int lo =
      (mode == EpsilonMode::Forbid && max_states >= 2) ? 2 : 1;
  const int k = static_cast<int>(
      draw(rng, static_cast<std::uint32_t>(lo),
           static_cast<std::uint32_t>(std::max(lo, max_states))));
  std::vector<int> accepting;
  for (int q = 0; q < k; ++q)
    if (coin(rng)) accepting.push_back(q);
  if (mode == EpsilonMode::Forbid) {
    accepting.erase(std::remove(accepting.begin(), accepting.end(), 0),
                    accepting.end());
    if (accepting.empty() && k >= 2) accepting.push_back(k - 1);
  } else if (accepting.empty()) {
    accepting.push_back(k - 1);
  }
  std::vector<std::array<int, 3>> delta;
  for (int from = 0; from < k; ++from)
    for (int sym = 0; sym < static_cast<int>(alphabet.size()); ++sym)
      for (int to = 0; to < k; ++to)
        if (coin(rng)) delta.push_back({from, sym, to});
  return make_automaton(alphabet, k, {0}, std::move(accepting),
                        std::move(delta));
}

}  // namespace

std::optional<Interpretation> countermodel_search(
    const Sequent& s, const CountermodelConfig& cfg) {
  if (cfg.alphabet.empty())
    throw Error("countermodel search needs a nonempty alphabet");
  if (cfg.max_states < 1)
    throw Error("countermodel search needs max_states >= 1");
  std::vector<std::string> alphabet = cfg.alphabet;
  std::sort(alphabet.begin(), alphabet.end());
  for (std::size_t i = 1; i < alphabet.size(); ++i)
    if (alphabet[i] == alphabet[i - 1])
      throw Error("duplicate alphabet symbol '" + alphabet[i] + "'");

  std::set<std::string> names;
  auto collect = [&names](const Formula& g, Parity) {
    if (g.is(FKind::Prim)) names.insert(g.prim_name());
  };
  for (const auto& f : s.lhs) visit_occurrences(f, collect);
  visit_occurrences(s.rhs, collect);

  std::mt19937 rng(cfg.seed);
  for (int sample = 0; sample < cfg.samples; ++sample) {
    Interpretation m;
    m.epsilon_mode = cfg.epsilon_mode;
    for (const auto& name : names)
      m.primitives.emplace(
          name, sample_automaton(rng, alphabet, cfg.max_states,
                                 cfg.epsilon_mode));
    bool ok = true;
    try {
      ok = holds(s, m);
    } catch (const Error&) {
      continue;  // state blow-up on this draw; try the next one
    }
    if (!ok) return m;
  }
  return std::nullopt;
}

}  // namespace cyclam
