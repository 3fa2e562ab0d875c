#include "cyclam/hypergraph.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "json.hpp"

namespace cyclam {

// ---------------------------------------------------------------------------
// Types

struct HlNode {
  HlKind kind = HlKind::HPrim;
  std::string name;       // HPrim
  int rank = 0;
  int size = 0;
  HlType num;             // HDiv
  Hypergraph graph;       // HDiv denominator / HTimes body
  int dollar_index = -1;  // HDiv
  std::string key;
};

namespace {

const HlNode& deref(const std::shared_ptr<const HlNode>& n) {
  if (!n) throw Error("empty type handle");
  return *n;
}

bool valid_prim_name(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      return false;
  return true;
}

}  // namespace

std::string_view hl_kind_name(HlKind k) {
  switch (k) {
    case HlKind::HPrim: return "prim";
    case HlKind::HDiv: return "div";
    case HlKind::HTimes: return "times";
    case HlKind::HDollar: return "dollar";
  }
  return "?";
}

HlType HlType::prim(std::string name, int rank) {
  if (!valid_prim_name(name))
    throw Error("invalid primitive type name '" + name + "'");
  if (rank < 0) throw Error("primitive rank must be nonnegative");
  auto n = std::make_shared<HlNode>();
  n->kind = HlKind::HPrim;
  n->rank = rank;
  n->size = 1;
  n->key = name;
  if (rank != 2) n->key += "#" + std::to_string(rank);
  n->name = std::move(name);
  return HlType(std::move(n));
}

HlType HlType::dollar(int rank) {
  if (rank < 0) throw Error("placeholder rank must be nonnegative");
  auto n = std::make_shared<HlNode>();
  n->kind = HlKind::HDollar;
  n->rank = rank;
  n->size = 0;
  n->key = "$" + std::to_string(rank);
  return HlType(std::move(n));
}

HlType HlType::divide(HlType numerator, Hypergraph denominator) {
  if (!numerator) throw Error("empty type handle");
  if (numerator.is(HlKind::HDollar))
    throw Error("a placeholder cannot be a numerator");
  validate_graph(denominator, /*allow_isolated=*/false, /*max_dollars=*/1);
  int dollar = -1;
  int total = 0;
  for (std::size_t i = 0; i < denominator.edges.size(); ++i) {
    const HlType& lab = denominator.edges[i].label;
    if (lab.is(HlKind::HDollar)) dollar = static_cast<int>(i);
    total += lab.size();
  }
  if (dollar < 0)
    throw Error("denominator must contain exactly one placeholder edge");
  if (graph_rank(denominator) != numerator.rank())
    throw Error("denominator rank " + std::to_string(graph_rank(denominator)) +
                " differs from numerator rank " +
                std::to_string(numerator.rank()));
  auto n = std::make_shared<HlNode>();
  n->kind = HlKind::HDiv;
  n->rank = static_cast<int>(denominator.edges[dollar].att.size());
  n->size = numerator.size() + total + 1;
  n->key = "(" + numerator.key() + " div " + canonical_key(denominator) + ")";
  n->num = std::move(numerator);
  n->graph = std::move(denominator);
  n->dollar_index = dollar;
  return HlType(std::move(n));
}

HlType HlType::times(Hypergraph body) {
  validate_graph(body, /*allow_isolated=*/false, /*max_dollars=*/0);
  int total = 0;
  for (const HlEdge& e : body.edges) total += e.label.size();
  auto n = std::make_shared<HlNode>();
  n->kind = HlKind::HTimes;
  n->rank = graph_rank(body);
  n->size = total + 1;
  n->key = "times" + canonical_key(body);
  n->graph = std::move(body);
  return HlType(std::move(n));
}

HlKind HlType::kind() const { return deref(node_).kind; }
int HlType::rank() const { return deref(node_).rank; }
int HlType::size() const { return deref(node_).size; }

const std::string& HlType::prim_name() const {
  const HlNode& n = deref(node_);
  if (n.kind != HlKind::HPrim) throw Error("prim_name() on a non-primitive type");
  return n.name;
}

const HlType& HlType::numerator() const {
  const HlNode& n = deref(node_);
  if (n.kind != HlKind::HDiv) throw Error("numerator() on a non-division type");
  return n.num;
}

const Hypergraph& HlType::denominator() const {
  const HlNode& n = deref(node_);
  if (n.kind != HlKind::HDiv) throw Error("denominator() on a non-division type");
  return n.graph;
}

int HlType::dollar_edge() const {
  const HlNode& n = deref(node_);
  if (n.kind != HlKind::HDiv) throw Error("dollar_edge() on a non-division type");
  return n.dollar_index;
}

const Hypergraph& HlType::body() const {
  const HlNode& n = deref(node_);
  if (n.kind != HlKind::HTimes) throw Error("body() on a non-product type");
  return n.graph;
}

const std::string& HlType::key() const { return deref(node_).key; }

// ---------------------------------------------------------------------------
// Validation

int graph_rank(const Hypergraph& g) { return static_cast<int>(g.ext.size()); }

bool wi_ok(const Hypergraph& g) {
  std::vector<char> covered(g.node_count, 0);
  for (const HlEdge& e : g.edges)
    for (int v : e.att) {
      if (v < 0 || v >= g.node_count) return false;
      covered[v] = 1;
    }
  for (char c : covered)
    if (!c) return false;
  return true;
}

void validate_graph(const Hypergraph& g, bool allow_isolated, int max_dollars) {
  if (g.node_count < 0) throw Error("negative node count");
  int dollars = 0;
  std::vector<char> covered(g.node_count, 0);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const HlEdge& e = g.edges[i];
    if (!e.label)
      throw Error("edge " + std::to_string(i) + " has an empty label");
    if (e.label.is(HlKind::HDollar)) ++dollars;
    if (static_cast<int>(e.att.size()) != e.label.rank())
      throw Error("edge " + std::to_string(i) + " attaches " +
                  std::to_string(e.att.size()) + " node(s) but its label '" +
                  e.label.key() + "' has rank " +
                  std::to_string(e.label.rank()));
    for (int v : e.att) {
      if (v < 0 || v >= g.node_count)
        throw Error("edge " + std::to_string(i) + " attaches node id " +
                    std::to_string(v) + " outside [0, " +
                    std::to_string(g.node_count) + ")");
      covered[v] = 1;
    }
  }
  if (dollars > max_dollars)
    throw Error(max_dollars == 0
                    ? "placeholder label outside a denominator"
                    : "denominator must contain exactly one placeholder edge");
  std::vector<char> seen(g.node_count, 0);
  for (int v : g.ext) {
    if (v < 0 || v >= g.node_count)
      throw Error("external node id " + std::to_string(v) + " outside [0, " +
                  std::to_string(g.node_count) + ")");
    if (seen[v]) throw Error("duplicate external node " + std::to_string(v));
    seen[v] = 1;
  }
  if (!allow_isolated)
    for (int v = 0; v < g.node_count; ++v)
      if (!covered[v]) throw Error("isolated node " + std::to_string(v));
}

void validate_sequent(const HlSequent& s, bool allow_isolated) {
  if (!s.rhs) throw Error("empty type handle");
  if (s.rhs.is(HlKind::HDollar))
    throw Error("a placeholder cannot be a succedent");
  validate_graph(s.lhs, allow_isolated, /*max_dollars=*/0);
  if (graph_rank(s.lhs) != s.rhs.rank())
    throw Error("sequent rank mismatch: antecedent has rank " +
                std::to_string(graph_rank(s.lhs)) + ", succedent has rank " +
                std::to_string(s.rhs.rank()));
}

// ---------------------------------------------------------------------------
// Constructions

Hypergraph bullet(const HlType& t) {
  if (!t) throw Error("empty type handle");
  if (t.is(HlKind::HDollar)) throw Error("cannot take the bullet of a placeholder");
  Hypergraph g;
  g.node_count = t.rank();
  HlEdge e;
  e.label = t;
  for (int v = 0; v < g.node_count; ++v) {
    e.att.push_back(v);
    g.ext.push_back(v);
  }
  g.edges.push_back(std::move(e));
  return g;
}

Hypergraph sg(const std::vector<HlType>& word) {
  if (word.empty()) throw Error("string graph of an empty word");
  Hypergraph g;
  g.node_count = static_cast<int>(word.size()) + 1;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!word[i]) throw Error("empty type handle");
    if (word[i].rank() != 2)
      throw Error("string graph labels must have rank 2; '" + word[i].key() +
                  "' has rank " + std::to_string(word[i].rank()));
    g.edges.push_back(
        {{static_cast<int>(i), static_cast<int>(i) + 1}, word[i]});
  }
  g.ext = {0, g.node_count - 1};
  return g;
}

Hypergraph flipped_sg(const std::vector<HlType>& word) {
  Hypergraph g = sg(word);
  std::swap(g.ext[0], g.ext[1]);
  return g;
}

Hypergraph loop_graph(const HlType& t) {
  if (!t) throw Error("empty type handle");
  if (t.rank() != 2)
    throw Error("loop labels must have rank 2; '" + t.key() + "' has rank " +
                std::to_string(t.rank()));
  Hypergraph g;
  g.node_count = 1;
  g.edges.push_back({{0, 0}, t});
  return g;
}

Hypergraph cycle_graph(const std::vector<HlType>& word) {
  if (word.empty()) throw Error("cycle graph of an empty word");
  Hypergraph g;
  g.node_count = static_cast<int>(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!word[i]) throw Error("empty type handle");
    if (word[i].rank() != 2)
      throw Error("cycle graph labels must have rank 2; '" + word[i].key() +
                  "' has rank " + std::to_string(word[i].rank()));
    g.edges.push_back({{static_cast<int>(i),
                        static_cast<int>((i + 1) % word.size())},
                       word[i]});
  }
  return g;
}

HlType neck_h(const HlType& t) {
  return HlType::divide(HlType::times(loop_graph(t)),
                        loop_graph(HlType::dollar(2)));
}

// ---------------------------------------------------------------------------
// Replacement

Hypergraph replace(const Hypergraph& g, int edge, const Hypergraph& h) {
  if (edge < 0 || edge >= static_cast<int>(g.edges.size()))
    throw Error("replace: edge index " + std::to_string(edge) +
                " outside [0, " + std::to_string(g.edges.size()) + ")");
  const std::vector<int>& att = g.edges[edge].att;
  if (static_cast<int>(att.size()) != graph_rank(h))
    throw Error("replace: edge attaches " + std::to_string(att.size()) +
                " node(s) but the replacement has rank " +
                std::to_string(graph_rank(h)));
  std::vector<int> map(h.node_count, -1);
  for (std::size_t i = 0; i < h.ext.size(); ++i) map[h.ext[i]] = att[i];
  Hypergraph out;
  int next = g.node_count;
  for (int v = 0; v < h.node_count; ++v)
    if (map[v] < 0) map[v] = next++;
  out.node_count = next;
  out.ext = g.ext;
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    if (static_cast<int>(i) != edge) out.edges.push_back(g.edges[i]);
  for (const HlEdge& e : h.edges) {
    HlEdge ne;
    ne.label = e.label;
    ne.att.reserve(e.att.size());
    for (int v : e.att) ne.att.push_back(map[v]);
    out.edges.push_back(std::move(ne));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical form and isomorphism

namespace {

std::string encode_graph(const Hypergraph& g, const std::vector<int>& pos) {
  std::vector<std::string> es;
  es.reserve(g.edges.size());
  for (const HlEdge& e : g.edges) {
    std::string s = e.label.key();
    s += ":(";
    for (std::size_t i = 0; i < e.att.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(pos[e.att[i]]);
    }
    s += ')';
    es.push_back(std::move(s));
  }
  std::sort(es.begin(), es.end());
  std::string out = "[n=" + std::to_string(g.node_count) + ";";
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i) out += ' ';
    out += es[i];
  }
  out += ";ext=(";
  for (std::size_t i = 0; i < g.ext.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(pos[g.ext[i]]);
  }
  out += ")]";
  return out;
}

// Partition refinement: each node's color is iterated to the rank of the pair
// (old color, multiset of label/position/attachment-color tokens) until the
// number of classes stops growing.  Refinement only ever splits classes.
void refine_colors(const Hypergraph& g, std::vector<int>& color) {
  const int n = g.node_count;
  if (n == 0) return;
  std::size_t classes = std::set<int>(color.begin(), color.end()).size();
  for (;;) {
    std::vector<std::vector<std::string>> tok(n);
    for (const HlEdge& e : g.edges) {
      std::string att_colors = "(";
      for (std::size_t i = 0; i < e.att.size(); ++i) {
        if (i) att_colors += ',';
        att_colors += std::to_string(color[e.att[i]]);
      }
      att_colors += ')';
      for (std::size_t t = 0; t < e.att.size(); ++t)
        tok[e.att[t]].push_back(e.label.key() + "@" + std::to_string(t) +
                                att_colors);
    }
    std::vector<std::string> sig(n);
    for (int v = 0; v < n; ++v) {
      std::sort(tok[v].begin(), tok[v].end());
      sig[v] = std::to_string(color[v]) + "|";
      for (const std::string& s : tok[v]) {
        sig[v] += s;
        sig[v] += ';';
      }
    }
    std::map<std::string, int> order;
    for (int v = 0; v < n; ++v) order[sig[v]] = 0;
    int c = 0;
    for (auto& kv : order) kv.second = c++;
    for (int v = 0; v < n; ++v) color[v] = order[sig[v]];
    if (static_cast<std::size_t>(c) == classes) break;
    classes = c;
  }
}

// Individualization with backtracking: pick the first color class with two or
// more members, give each member in turn a fresh color, refine, recurse; keep
// the lexicographically least leaf encoding.
void canon_search(const Hypergraph& g, std::vector<int> color, bool& have,
                  std::string& best) {
  refine_colors(g, color);
  const int n = g.node_count;
  std::vector<int> count(n + 1, 0);
  for (int v = 0; v < n; ++v) ++count[color[v]];
  int target = -1;
  for (std::size_t c = 0; c < count.size(); ++c)
    if (count[c] >= 2) {
      target = static_cast<int>(c);
      break;
    }
  if (target < 0) {
    std::string s = encode_graph(g, color);
    if (!have || s < best) {
      best = std::move(s);
      have = true;
    }
    return;
  }
  for (int v = 0; v < n; ++v) {
    if (color[v] != target) continue;
    std::vector<int> c2 = color;
    c2[v] = n;
    canon_search(g, std::move(c2), have, best);
  }
}

}  // namespace

std::string canonical_key(const Hypergraph& g) {
  std::vector<int> color(g.node_count, static_cast<int>(g.ext.size()));
  for (std::size_t i = 0; i < g.ext.size(); ++i)
    color[g.ext[i]] = static_cast<int>(i);
  bool have = false;
  std::string best;
  canon_search(g, std::move(color), have, best);
  return best;
}

bool iso(const Hypergraph& g, const Hypergraph& h) {
  if (g.node_count != h.node_count || g.edges.size() != h.edges.size() ||
      g.ext.size() != h.ext.size())
    return false;
  return canonical_key(g) == canonical_key(h);
}

std::string print_hl_type(const HlType& t) { return t.key(); }

std::string print_hl_sequent(const HlSequent& s) {
  return canonical_key(s.lhs) + " -> " + s.rhs.key();
}

// ---------------------------------------------------------------------------
// Translation

HlType tr(const Formula& f, bool allow_shift) {
  switch (f.kind()) {
    case FKind::Prim:
      return HlType::prim(f.prim_name());
    case FKind::Over:
      return HlType::divide(
          tr(f.numerator(), allow_shift),
          sg({HlType::dollar(2), tr(f.denominator(), allow_shift)}));
    case FKind::Under:
      return HlType::divide(
          tr(f.numerator(), allow_shift),
          sg({tr(f.denominator(), allow_shift), HlType::dollar(2)}));
    case FKind::Prod:
      return HlType::times(
          sg({tr(f.left(), allow_shift), tr(f.right(), allow_shift)}));
    case FKind::Rev: {
      Hypergraph g;
      g.node_count = 2;
      g.edges.push_back({{0, 1}, tr(f.child(), allow_shift)});
      g.ext = {1, 0};
      return HlType::times(std::move(g));
    }
    case FKind::Brac:
      return neck_h(tr(f.child(), allow_shift));
    case FKind::Shift:
      if (!allow_shift)
        throw Error(
            "the translation accepts ^r and ^b but not ^c "
            "(the experimental flag renders ^c like ^b)");
      return neck_h(tr(f.child(), allow_shift));
  }
  throw Error("invalid formula");
}

HlSequent tr_sequent(const Sequent& s, bool allow_shift) {
  if (s.lhs.empty()) throw Error("sequent antecedent must be nonempty");
  std::vector<HlType> word;
  word.reserve(s.lhs.size());
  for (const Formula& f : s.lhs) word.push_back(tr(f, allow_shift));
  return HlSequent{sg(word), tr(s.rhs, allow_shift)};
}

// ---------------------------------------------------------------------------
// Decomposition

namespace {

// One block of a decomposition: which host nodes the piece's external nodes
// sit on (by position), which host edges the piece keeps, and which host
// nodes become the piece's internal nodes.
struct PieceSpec {
  std::vector<int> boundary;
  std::vector<int> block_edges;
  std::vector<int> internals;
};

// Build every piece tuple for a fixed node map and edge partition.  Piece
// node ids are 0..r-1 for the external nodes (r = boundary length) followed
// by the internals in ascending host order.  When several external positions
// sit on the same host node, each attachment occurrence of that node chooses
// its position independently: that choice is what lets a cycle unglue into a
// chain in either orientation.
void enumerate_pieces(
    const Hypergraph& host, const std::vector<PieceSpec>& specs,
    const std::function<void(std::vector<Hypergraph>&&)>& yield) {
  const int ns = static_cast<int>(specs.size());
  struct Slot {
    int s, e, t;
    std::vector<int> options;
  };
  std::vector<std::vector<std::vector<int>>> att(ns);
  std::vector<Slot> slots;
  for (int s = 0; s < ns; ++s) {
    const PieceSpec& sp = specs[s];
    const int r = static_cast<int>(sp.boundary.size());
    std::map<int, std::vector<int>> bpos;
    for (int j = 0; j < r; ++j) bpos[sp.boundary[j]].push_back(j);
    std::map<int, int> internal_id;
    for (std::size_t i = 0; i < sp.internals.size(); ++i)
      internal_id[sp.internals[i]] = r + static_cast<int>(i);
    att[s].resize(sp.block_edges.size());
    for (std::size_t e = 0; e < sp.block_edges.size(); ++e) {
      const std::vector<int>& ha = host.edges[sp.block_edges[e]].att;
      att[s][e].assign(ha.size(), -1);
      for (std::size_t t = 0; t < ha.size(); ++t) {
        auto ii = internal_id.find(ha[t]);
        if (ii != internal_id.end()) {
          att[s][e][t] = ii->second;
          continue;
        }
        auto bi = bpos.find(ha[t]);
        if (bi == bpos.end()) return;  // unreachable given block constraints
        if (bi->second.size() == 1)
          att[s][e][t] = bi->second[0];
        else
          slots.push_back({s, static_cast<int>(e), static_cast<int>(t),
                           bi->second});
      }
    }
  }
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == slots.size()) {
      std::vector<Hypergraph> pieces(ns);
      for (int s = 0; s < ns; ++s) {
        const PieceSpec& sp = specs[s];
        Hypergraph& p = pieces[s];
        p.node_count = static_cast<int>(sp.boundary.size()) +
                       static_cast<int>(sp.internals.size());
        for (int j = 0; j < static_cast<int>(sp.boundary.size()); ++j)
          p.ext.push_back(j);
        for (std::size_t e = 0; e < sp.block_edges.size(); ++e)
          p.edges.push_back({att[s][e], host.edges[sp.block_edges[e]].label});
      }
      yield(std::move(pieces));
      return;
    }
    const Slot& sl = slots[i];
    for (int j : sl.options) {
      att[sl.s][sl.e][sl.t] = j;
      go(i + 1);
    }
    att[sl.s][sl.e][sl.t] = -1;
  };
  go(0);
}

}  // namespace

std::vector<Decomposition> match_pattern(const Hypergraph& k,
                                         const Hypergraph& pattern,
                                         bool allow_isolated) {
  std::vector<Decomposition> out;
  if (k.ext.size() != pattern.ext.size()) return out;
  const int pn = pattern.node_count;
  const int kn = k.node_count;
  const int pe = static_cast<int>(pattern.edges.size());

  std::vector<int> phi(pn, -1);
  std::vector<char> used(kn, 0);
  for (std::size_t i = 0; i < pattern.ext.size(); ++i) {
    int pv = pattern.ext[i], ku = k.ext[i];
    if (phi[pv] == -1) {
      if (used[ku]) return out;
      phi[pv] = ku;
      used[ku] = 1;
    } else if (phi[pv] != ku) {
      return out;
    }
  }

  std::vector<std::vector<char>> pat_att(pe, std::vector<char>(pn ? pn : 1, 0));
  for (int m = 0; m < pe; ++m)
    for (int v : pattern.edges[m].att) pat_att[m][v] = 1;

  std::vector<int> unassigned;
  for (int v = 0; v < pn; ++v)
    if (phi[v] == -1) unassigned.push_back(v);

  std::vector<int> phi_inv(kn, -1);
  std::vector<int> block(k.edges.size(), -1);
  std::vector<int> owner(kn, -1);
  std::set<std::string> seen;

  auto emit = [&](std::vector<Hypergraph>&& pieces) {
    if (!allow_isolated)
      for (const Hypergraph& p : pieces)
        if (!wi_ok(p)) return;
    std::string dkey;
    for (const Hypergraph& p : pieces) {
      dkey += canonical_key(p);
      dkey += '|';
    }
    if (!seen.insert(dkey).second) return;
    Hypergraph r = pattern;
    for (int m = pe - 1; m >= 0; --m) r = replace(r, m, pieces[m]);
    if (!iso(r, k)) return;
    out.push_back(Decomposition{std::move(pieces)});
  };

  auto pieces_stage = [&]() {
    // Every host node must be accounted for: mapped, or owned by a block.
    for (int u = 0; u < kn; ++u)
      if (phi_inv[u] < 0 && owner[u] < 0) return;
    std::vector<PieceSpec> specs(pe);
    for (int m = 0; m < pe; ++m) {
      for (int v : pattern.edges[m].att) specs[m].boundary.push_back(phi[v]);
      for (int u = 0; u < kn; ++u)
        if (owner[u] == m) specs[m].internals.push_back(u);
    }
    for (std::size_t f = 0; f < k.edges.size(); ++f)
      specs[block[f]].block_edges.push_back(static_cast<int>(f));
    enumerate_pieces(k, specs, emit);
  };

  std::function<void(std::size_t)> assign_blocks = [&](std::size_t f) {
    if (f == k.edges.size()) {
      pieces_stage();
      return;
    }
    for (int m = 0; m < pe; ++m) {
      bool ok = true;
      std::vector<int> newly;
      for (int u : k.edges[f].att) {
        if (phi_inv[u] >= 0) {
          if (!pat_att[m][phi_inv[u]]) {
            ok = false;
            break;
          }
        } else if (owner[u] == -1) {
          owner[u] = m;
          newly.push_back(u);
        } else if (owner[u] != m) {
          ok = false;
          break;
        }
      }
      if (ok) {
        block[f] = m;
        assign_blocks(f + 1);
        block[f] = -1;
      }
      for (int u : newly) owner[u] = -1;
    }
  };

  std::function<void(std::size_t)> assign_phi = [&](std::size_t i) {
    if (i == unassigned.size()) {
      for (int u = 0; u < kn; ++u) phi_inv[u] = -1;
      for (int v = 0; v < pn; ++v) phi_inv[phi[v]] = v;
      assign_blocks(0);
      return;
    }
    int v = unassigned[i];
    for (int u = 0; u < kn; ++u) {
      if (used[u]) continue;
      phi[v] = u;
      used[u] = 1;
      assign_phi(i + 1);
      phi[v] = -1;
      used[u] = 0;
    }
  };

  assign_phi(0);
  return out;
}

// ---------------------------------------------------------------------------
// Backward division-left: carve a division edge's denominator image out of
// the antecedent.

namespace {

struct DivOption {
  Hypergraph context;  // fresh numerator-labeled edge last
  int context_edge;
  std::vector<Hypergraph> pieces;  // per non-placeholder denominator edge
  std::vector<HlType> piece_labels;
};

std::vector<DivOption> div_contexts(const Hypergraph& h, int ehat,
                                    bool allow_isolated) {
  std::vector<DivOption> out;
  const HlType t = h.edges[ehat].label;
  const HlType& num = t.numerator();
  const Hypergraph& d = t.denominator();
  const int didx = t.dollar_edge();
  const int dn = d.node_count;
  const int hn = h.node_count;

  std::vector<int> dlist;
  for (std::size_t j = 0; j < d.edges.size(); ++j)
    if (static_cast<int>(j) != didx) dlist.push_back(static_cast<int>(j));
  const int blocks = static_cast<int>(dlist.size());

  std::vector<char> dext(dn ? dn : 1, 0);
  for (int v : d.ext) dext[v] = 1;
  std::vector<char> hext(hn ? hn : 1, 0);
  for (int v : h.ext) hext[v] = 1;

  std::vector<std::vector<char>> datt(blocks, std::vector<char>(dn ? dn : 1, 0));
  for (int c = 0; c < blocks; ++c)
    for (int v : d.edges[dlist[c]].att) datt[c][v] = 1;

  // Node map of the denominator into the antecedent.  The placeholder edge's
  // attachment is pinned to the division edge's.  Distinct denominator nodes
  // may share an image only if both are external to the denominator.
  std::vector<int> psi(dn, -1);
  auto collides_ok = [&](int v, int u) {
    for (int v2 = 0; v2 < dn; ++v2)
      if (v2 != v && psi[v2] == u && !(dext[v] && dext[v2])) return false;
    return true;
  };
  const std::vector<int>& pin_from = d.edges[didx].att;
  const std::vector<int>& pin_to = h.edges[ehat].att;
  for (std::size_t j = 0; j < pin_from.size(); ++j) {
    int v = pin_from[j], u = pin_to[j];
    if (psi[v] == -1) {
      if (!collides_ok(v, u)) return out;
      psi[v] = u;
    } else if (psi[v] != u) {
      return out;
    }
  }
  std::vector<int> free_nodes;
  for (int v = 0; v < dn; ++v)
    if (psi[v] == -1) free_nodes.push_back(v);

  std::set<std::string> seen;
  std::vector<int> color(h.edges.size(), -2);  // -1 context, >= 0 region block
  std::vector<int> owner(hn, -2);              // -1 context, >= 0 region block
  std::vector<std::vector<int>> pre(hn);

  auto finish_coloring = [&]() {
    // Region-internal nodes stay internal to the whole antecedent.
    for (int u = 0; u < hn; ++u)
      if (owner[u] >= 0 && hext[u]) return;
    std::vector<int> own(owner);
    for (int u = 0; u < hn; ++u)
      if (own[u] == -2 && pre[u].empty()) {
        // A node no edge covers; representable only as a context node.
        if (!allow_isolated) return;
        own[u] = -1;
      }

    std::vector<PieceSpec> specs(blocks);
    for (int c = 0; c < blocks; ++c) {
      for (int v : d.edges[dlist[c]].att) specs[c].boundary.push_back(psi[v]);
      for (int u = 0; u < hn; ++u)
        if (own[u] == c) specs[c].internals.push_back(u);
    }
    std::vector<int> ctx_edges;
    for (std::size_t f = 0; f < h.edges.size(); ++f) {
      if (static_cast<int>(f) == ehat) continue;
      if (color[f] == -1)
        ctx_edges.push_back(static_cast<int>(f));
      else
        specs[color[f]].block_edges.push_back(static_cast<int>(f));
    }

    // Context node set: covered by a context edge, an image of a denominator
    // external node, or a kept orphan.
    std::vector<char> in_k(hn ? hn : 1, 0);
    for (int f : ctx_edges)
      for (int u : h.edges[f].att) in_k[u] = 1;
    std::vector<int> sigma;
    for (int v : d.ext) {
      sigma.push_back(psi[v]);
      in_k[psi[v]] = 1;
    }
    for (int u = 0; u < hn; ++u)
      if (own[u] == -1 && pre[u].empty() && owner[u] == -2) in_k[u] = 1;
    for (int u : h.ext)
      if (!in_k[u]) {
        if (!allow_isolated) return;
        in_k[u] = 1;
      }

    std::vector<int> kid(hn ? hn : 1, -1);
    int knodes = 0;
    for (int u = 0; u < hn; ++u)
      if (in_k[u]) kid[u] = knodes++;
    Hypergraph k;
    k.node_count = knodes;
    for (int f : ctx_edges) {
      HlEdge e;
      e.label = h.edges[f].label;
      for (int u : h.edges[f].att) e.att.push_back(kid[u]);
      k.edges.push_back(std::move(e));
    }
    HlEdge fresh;
    fresh.label = num;
    for (int u : sigma) fresh.att.push_back(kid[u]);
    k.edges.push_back(std::move(fresh));
    for (int u : h.ext) k.ext.push_back(kid[u]);
    const int context_edge = static_cast<int>(ctx_edges.size());

    enumerate_pieces(h, specs, [&](std::vector<Hypergraph>&& pieces) {
      if (!allow_isolated)
        for (const Hypergraph& p : pieces)
          if (!wi_ok(p)) return;
      std::string dkey = canonical_key(k);
      for (const Hypergraph& p : pieces) {
        dkey += '|';
        dkey += canonical_key(p);
      }
      if (!seen.insert(dkey).second) return;
      // Verify by recomposition: contract the region back into a single
      // division-labeled edge and compare with the antecedent.
      Hypergraph dhat = d;
      dhat.edges[didx].label = t;
      Hypergraph r = replace(k, context_edge, dhat);
      const int base = static_cast<int>(k.edges.size()) - 1;
      for (int c = blocks - 1; c >= 0; --c)
        r = replace(r, base + dlist[c], pieces[c]);
      if (!iso(r, h)) return;
      DivOption opt;
      opt.context = k;
      opt.context_edge = context_edge;
      opt.pieces = std::move(pieces);
      for (int c = 0; c < blocks; ++c)
        opt.piece_labels.push_back(d.edges[dlist[c]].label);
      out.push_back(std::move(opt));
    });
  };

  std::function<void(std::size_t)> assign_colors = [&](std::size_t f) {
    if (f == h.edges.size()) {
      finish_coloring();
      return;
    }
    if (static_cast<int>(f) == ehat) {
      assign_colors(f + 1);
      return;
    }
    for (int cand = -1; cand < blocks; ++cand) {
      bool ok = true;
      std::vector<int> newly;
      for (int u : h.edges[f].att) {
        if (!pre[u].empty()) {
          if (cand == -1) {
            // Context edges may touch only images of external denominator
            // nodes.
            for (int v : pre[u])
              if (!dext[v]) {
                ok = false;
                break;
              }
          } else {
            bool touches = false;
            for (int v : pre[u])
              if (datt[cand][v]) {
                touches = true;
                break;
              }
            if (!touches) ok = false;
          }
          if (!ok) break;
        } else if (owner[u] == -2) {
          owner[u] = cand;
          newly.push_back(u);
        } else if (owner[u] != cand) {
          ok = false;
          break;
        }
      }
      if (ok) {
        color[f] = cand;
        assign_colors(f + 1);
        color[f] = -2;
      }
      for (int u : newly) owner[u] = -2;
    }
  };

  std::function<void(std::size_t)> assign_psi = [&](std::size_t i) {
    if (i == free_nodes.size()) {
      bool ok = true;
      for (int v = 0; v < dn && ok; ++v)
        if (!dext[v] && hext[psi[v]]) ok = false;
      if (!ok) return;
      for (int u = 0; u < hn; ++u) pre[u].clear();
      for (int v = 0; v < dn; ++v) pre[psi[v]].push_back(v);
      assign_colors(0);
      return;
    }
    int v = free_nodes[i];
    for (int u = 0; u < hn; ++u) {
      if (!collides_ok(v, u)) continue;
      psi[v] = u;
      assign_psi(i + 1);
      psi[v] = -1;
    }
  };

  assign_psi(0);
  return out;
}

bool axiom_fits(const HlSequent& s) {
  if (!s.rhs.is(HlKind::HPrim) || s.lhs.edges.size() != 1) return false;
  const HlEdge& e = s.lhs.edges[0];
  if (e.label != s.rhs) return false;
  if (static_cast<int>(e.att.size()) != s.lhs.node_count) return false;
  std::set<int> distinct(e.att.begin(), e.att.end());
  if (distinct.size() != e.att.size()) return false;
  return s.lhs.ext == e.att;
}

}  // namespace

// ---------------------------------------------------------------------------
// Proofs

std::string_view hl_rule_name(HlRuleId r) {
  switch (r) {
    case HlRuleId::HlAx: return "axiom";
    case HlRuleId::HlDivL: return "(div->)";
    case HlRuleId::HlDivR: return "(->div)";
    case HlRuleId::HlTimesL: return "(times->)";
    case HlRuleId::HlTimesR: return "(->times)";
  }
  return "?";
}

HlProofPtr make_hl_proof(HlSequent conclusion, HlRuleId rule,
                         std::vector<HlProofPtr> premises, int edge) {
  auto n = std::make_shared<HlProofNode>();
  n->conclusion = std::move(conclusion);
  n->rule = rule;
  n->edge = edge;
  n->premises = std::move(premises);
  return n;
}

namespace {

void check_hl_rec(const HlProofPtr& p, bool allow_isolated,
                  std::vector<int>& path, CheckResult& res) {
  if (!res.ok) return;
  auto fail = [&](std::string msg) {
    res.ok = false;
    res.message = std::move(msg);
    res.path = path;
  };
  if (!p) {
    fail("missing proof node");
    return;
  }
  try {
    validate_sequent(p->conclusion, allow_isolated);
    const HlSequent& con = p->conclusion;
    switch (p->rule) {
      case HlRuleId::HlAx: {
        if (!p->premises.empty()) return fail("axiom with premises");
        if (!axiom_fits(con)) return fail("axiom figure mismatch");
        break;
      }
      case HlRuleId::HlDivR: {
        if (p->premises.size() != 1)
          return fail("division-right needs one premise");
        if (!con.rhs.is(HlKind::HDiv))
          return fail("division-right on a non-division succedent");
        const HlSequent& prem = p->premises[0]->conclusion;
        if (prem.rhs != con.rhs.numerator())
          return fail("premise succedent is not the numerator");
        Hypergraph want =
            replace(con.rhs.denominator(), con.rhs.dollar_edge(), con.lhs);
        if (!iso(prem.lhs, want))
          return fail("premise antecedent is not the plugged denominator");
        break;
      }
      case HlRuleId::HlTimesL: {
        if (p->premises.size() != 1)
          return fail("product-left needs one premise");
        if (p->edge < 0 || p->edge >= static_cast<int>(con.lhs.edges.size()))
          return fail("product-left edge index out of range");
        const HlType& lab = con.lhs.edges[p->edge].label;
        if (!lab.is(HlKind::HTimes))
          return fail("product-left on a non-product edge");
        const HlSequent& prem = p->premises[0]->conclusion;
        if (prem.rhs != con.rhs) return fail("product-left changes the succedent");
        if (!iso(prem.lhs, replace(con.lhs, p->edge, lab.body())))
          return fail("premise antecedent is not the unfolded product");
        break;
      }
      case HlRuleId::HlTimesR: {
        if (!con.rhs.is(HlKind::HTimes))
          return fail("product-right on a non-product succedent");
        const Hypergraph& m = con.rhs.body();
        if (p->premises.size() != m.edges.size())
          return fail("product-right premise count differs from the body");
        for (std::size_t i = 0; i < m.edges.size(); ++i)
          if (p->premises[i]->conclusion.rhs != m.edges[i].label)
            return fail("premise " + std::to_string(i) +
                        " succedent differs from the body label");
        Hypergraph r = m;
        for (int i = static_cast<int>(m.edges.size()) - 1; i >= 0; --i)
          r = replace(r, i, p->premises[i]->conclusion.lhs);
        if (!iso(r, con.lhs))
          return fail("premises do not recompose the antecedent");
        break;
      }
      case HlRuleId::HlDivL: {
        if (p->premises.empty())
          return fail("division-left needs at least one premise");
        const HlSequent& k0 = p->premises[0]->conclusion;
        if (k0.rhs != con.rhs)
          return fail("context premise succedent differs");
        if (p->edge < 0 || p->edge >= static_cast<int>(k0.lhs.edges.size()))
          return fail("context edge index out of range");
        // The recorded edge index is a hint: a premise fetched from the memo
        // concludes in a sequent isomorphic to the constructed one, so its
        // edge order may differ.  Try the hint first, then every other
        // position; the reconstruction + isomorphism test below is what
        // actually certifies the figure.
        std::vector<int> contracted;
        contracted.push_back(p->edge);
        for (std::size_t ce = 0; ce < k0.lhs.edges.size(); ++ce)
          if (static_cast<int>(ce) != p->edge)
            contracted.push_back(static_cast<int>(ce));
        bool found = false;
        for (int ce : contracted) {
          const HlType n = k0.lhs.edges[ce].label;
          for (const HlEdge& eh : con.lhs.edges) {
            if (!eh.label.is(HlKind::HDiv)) continue;
            const HlType& t = eh.label;
            if (t.numerator() != n) continue;
            const Hypergraph& d = t.denominator();
            const int didx = t.dollar_edge();
            std::vector<int> dlist;
            for (std::size_t j = 0; j < d.edges.size(); ++j)
              if (static_cast<int>(j) != didx)
                dlist.push_back(static_cast<int>(j));
            if (dlist.size() + 1 != p->premises.size()) continue;
            bool labels_ok = true;
            for (std::size_t c = 0; c < dlist.size(); ++c)
              if (p->premises[c + 1]->conclusion.rhs !=
                  d.edges[dlist[c]].label) {
                labels_ok = false;
                break;
              }
            if (!labels_ok) continue;
            try {
              Hypergraph dhat = d;
              dhat.edges[didx].label = t;
              Hypergraph r = replace(k0.lhs, ce, dhat);
              // replace() keeps the untouched context edges first and appends
              // the plug's edges, so denominator edge j lands at base + j no
              // matter which position was contracted.
              const int base = static_cast<int>(k0.lhs.edges.size()) - 1;
              for (int c = static_cast<int>(dlist.size()) - 1; c >= 0; --c)
                r = replace(r, base + dlist[c],
                            p->premises[c + 1]->conclusion.lhs);
              if (iso(r, con.lhs)) {
                found = true;
                break;
              }
            } catch (const Error&) {
              continue;
            }
          }
          if (found) break;
        }
        if (!found)
          return fail("no division-left figure reconstructs the conclusion");
        break;
      }
    }
  } catch (const Error& e) {
    return fail(e.what());
  }
  for (std::size_t i = 0; i < p->premises.size(); ++i) {
    path.push_back(static_cast<int>(i));
    check_hl_rec(p->premises[i], allow_isolated, path, res);
    path.pop_back();
    if (!res.ok) return;
  }
}

}  // namespace

CheckResult check_hl_proof(const HlProofPtr& p, bool allow_isolated) {
  CheckResult res;
  std::vector<int> path;
  check_hl_rec(p, allow_isolated, path, res);
  return res;
}

// ---------------------------------------------------------------------------
// Search

struct HlProver::Impl {
  HlSearchConfig cfg;
  std::unordered_map<std::string, std::optional<HlProofPtr>> memo;

  std::optional<HlProofPtr> go(const HlSequent& s) {
    if (s.lhs.node_count > cfg.node_limit)
      throw Error("hypergraph node limit exceeded (" +
                  std::to_string(s.lhs.node_count) + " > " +
                  std::to_string(cfg.node_limit) + ")");
    std::string key = canonical_key(s.lhs) + " -> " + s.rhs.key();
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    if (memo.size() >= cfg.memo_limit)
      throw Error("hypergraph memo limit exceeded (" +
                  std::to_string(cfg.memo_limit) + " entries)");
    // Every backward step strictly shrinks total label size plus succedent
    // size, so recursion cannot revisit this key before it is stored.
    std::optional<HlProofPtr> res = compute(s);
    memo[std::move(key)] = res;
    return res;
  }

  std::optional<HlProofPtr> compute(const HlSequent& s) {
    // Both unfolding steps below are invertible: the conclusion is derivable
    // exactly when the premise is, so commit to them eagerly.
    if (s.rhs.is(HlKind::HDiv)) {
      HlSequent prem{
          replace(s.rhs.denominator(), s.rhs.dollar_edge(), s.lhs),
          s.rhs.numerator()};
      auto inner = go(prem);
      if (!inner) return std::nullopt;
      return make_hl_proof(s, HlRuleId::HlDivR, {*inner});
    }
    for (std::size_t i = 0; i < s.lhs.edges.size(); ++i)
      if (s.lhs.edges[i].label.is(HlKind::HTimes)) {
        HlSequent prem{
            replace(s.lhs, static_cast<int>(i), s.lhs.edges[i].label.body()),
            s.rhs};
        auto inner = go(prem);
        if (!inner) return std::nullopt;
        return make_hl_proof(s, HlRuleId::HlTimesL, {*inner},
                             static_cast<int>(i));
      }
    if (axiom_fits(s)) return make_hl_proof(s, HlRuleId::HlAx);
    if (s.rhs.is(HlKind::HTimes)) {
      const Hypergraph& m = s.rhs.body();
      for (const Decomposition& dec :
           match_pattern(s.lhs, m, cfg.allow_isolated)) {
        std::vector<HlProofPtr> prem;
        bool all = true;
        for (std::size_t i = 0; i < dec.pieces.size(); ++i) {
          auto p = go(HlSequent{dec.pieces[i], m.edges[i].label});
          if (!p) {
            all = false;
            break;
          }
          prem.push_back(*p);
        }
        if (all) return make_hl_proof(s, HlRuleId::HlTimesR, std::move(prem));
      }
    }
    for (std::size_t i = 0; i < s.lhs.edges.size(); ++i) {
      if (!s.lhs.edges[i].label.is(HlKind::HDiv)) continue;
      for (const DivOption& opt :
           div_contexts(s.lhs, static_cast<int>(i), cfg.allow_isolated)) {
        auto p0 = go(HlSequent{opt.context, s.rhs});
        if (!p0) continue;
        std::vector<HlProofPtr> prem{*p0};
        bool all = true;
        for (std::size_t j = 0; j < opt.pieces.size(); ++j) {
          auto p = go(HlSequent{opt.pieces[j], opt.piece_labels[j]});
          if (!p) {
            all = false;
            break;
          }
          prem.push_back(*p);
        }
        if (all)
          return make_hl_proof(s, HlRuleId::HlDivL, std::move(prem),
                               opt.context_edge);
      }
    }
    return std::nullopt;
  }
};

HlProver::HlProver(HlSearchConfig cfg) : impl_(std::make_unique<Impl>()) {
  impl_->cfg = cfg;
}
HlProver::~HlProver() = default;
HlProver::HlProver(HlProver&&) noexcept = default;
HlProver& HlProver::operator=(HlProver&&) noexcept = default;

std::optional<HlProofPtr> HlProver::derive(const HlSequent& s) {
  validate_sequent(s, impl_->cfg.allow_isolated);
  return impl_->go(s);
}

const HlSearchConfig& HlProver::config() const { return impl_->cfg; }
std::size_t HlProver::memo_size() const { return impl_->memo.size(); }

std::optional<HlProofPtr> hl_derive(const HlSequent& s,
                                    const HlSearchConfig& cfg) {
  HlProver prover(cfg);
  return prover.derive(s);
}

bool lbrac_decide(const Sequent& s, const HlSearchConfig& cfg) {
  require_fragment(s, SystemId::LBrac);
  return hl_derive(tr_sequent(s), cfg).has_value();
}

HlSequent hl_cut_compose(const HlProofPtr& left, const HlProofPtr& right,
                         int e0) {
  CheckResult cl = check_hl_proof(left);
  if (!cl) throw Error("left proof does not check: " + cl.message);
  CheckResult cr = check_hl_proof(right);
  if (!cr) throw Error("right proof does not check: " + cr.message);
  const HlSequent& l = left->conclusion;
  const HlSequent& r = right->conclusion;
  if (e0 < 0 || e0 >= static_cast<int>(r.lhs.edges.size()))
    throw Error("cut edge index " + std::to_string(e0) + " outside [0, " +
                std::to_string(r.lhs.edges.size()) + ")");
  if (r.lhs.edges[e0].label != l.rhs)
    throw Error("cut edge label '" + r.lhs.edges[e0].label.key() +
                "' differs from the left succedent '" + l.rhs.key() + "'");
  return HlSequent{replace(r.lhs, e0, l.lhs), r.rhs};
}

// ---------------------------------------------------------------------------
// Text syntax for types

namespace {

struct TypeParser {
  std::string_view text;
  std::size_t pos = 0;
  const std::function<Hypergraph(const std::string&)>* resolve;

  [[noreturn]] void err(const std::string& msg) const {
    throw Error("type syntax error at offset " + std::to_string(pos) + ": " +
                msg);
  }
  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  bool ident_start() {
    return pos < text.size() &&
           (std::isalpha(static_cast<unsigned char>(text[pos])) ||
            text[pos] == '_');
  }
  std::string ident() {
    skip_ws();
    if (!ident_start()) err("identifier expected");
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) ||
            text[pos] == '_'))
      ++pos;
    return std::string(text.substr(start, pos - start));
  }
  int integer() {
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      err("number expected");
    int v = 0;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > 1'000'000) err("number too large");
      ++pos;
    }
    return v;
  }
  Hypergraph graph_ref() {
    skip_ws();
    if (pos >= text.size() || text[pos] != '@') err("'@' graph reference expected");
    ++pos;
    return (*resolve)(ident());
  }
  HlType parse_type() {
    HlType t = parse_atom();
    for (;;) {
      skip_ws();
      std::size_t save = pos;
      if (!ident_start()) break;
      if (ident() != "div") {
        pos = save;
        break;
      }
      skip_ws();
      if (pos >= text.size() || text[pos] != '@') {
        pos = save;
        break;
      }
      t = HlType::divide(std::move(t), graph_ref());
    }
    return t;
  }
  HlType parse_atom() {
    skip_ws();
    if (pos >= text.size()) err("type expected");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      HlType t = parse_type();
      skip_ws();
      if (pos >= text.size() || text[pos] != ')') err("')' expected");
      ++pos;
      return t;
    }
    if (c == '$') {
      ++pos;
      return HlType::dollar(integer());
    }
    if (ident_start()) {
      std::string name = ident();
      skip_ws();
      if (name == "times" && pos < text.size() && text[pos] == '@')
        return HlType::times(graph_ref());
      if (pos < text.size() && text[pos] == '#') {
        ++pos;
        return HlType::prim(std::move(name), integer());
      }
      return HlType::prim(std::move(name));
    }
    err(std::string("unexpected character '") + c + "'");
  }
  HlType parse_full() {
    HlType t = parse_type();
    if (!eof()) err("trailing input");
    return t;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// JSON input / output

namespace {

using nlohmann::json;

long long json_int(const json& j, const std::string& what) {
  if (!j.is_number_integer())
    throw Error(what + " must be an integer");
  return j.get<long long>();
}

}  // namespace

HlSequent hl_sequent_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw Error("top level must be an object");
  const json* graphs = nullptr;
  if (auto it = root.find("graphs"); it != root.end()) {
    if (!it->is_object()) throw Error("\"graphs\" must be an object");
    graphs = &*it;
  }

  std::map<std::string, Hypergraph> done;
  std::set<std::string> busy;
  std::function<Hypergraph(const std::string&)> resolve;

  auto parse_type_str = [&](const json& j,
                            const std::string& what) -> HlType {
    if (!j.is_string()) throw Error(what + " must be a type string");
    const std::string text = j.get<std::string>();
    TypeParser tp{text, 0, &resolve};
    return tp.parse_full();
  };

  std::function<Hypergraph(const json&)> parse_graph = [&](const json& j) {
    if (!j.is_object()) throw Error("graph must be an object");
    for (const char* kname : {"nodes", "edges", "ext"})
      if (!j.contains(kname))
        throw Error(std::string("graph missing \"") + kname + "\"");
    const json& nodes = j.at("nodes");
    if (!nodes.is_array()) throw Error("\"nodes\" must be an array");
    std::map<long long, int> id2ix;
    for (const json& n : nodes) {
      long long id = json_int(n, "node id");
      if (!id2ix.emplace(id, static_cast<int>(id2ix.size())).second)
        throw Error("duplicate node id " + std::to_string(id));
    }
    auto node_ix = [&](const json& n, const std::string& what) {
      long long id = json_int(n, what);
      auto it = id2ix.find(id);
      if (it == id2ix.end())
        throw Error(what + " refers to unknown node id " + std::to_string(id));
      return it->second;
    };
    Hypergraph g;
    g.node_count = static_cast<int>(id2ix.size());
    const json& edges = j.at("edges");
    if (!edges.is_array()) throw Error("\"edges\" must be an array");
    std::set<std::string> edge_ids;
    for (const json& je : edges) {
      if (!je.is_object()) throw Error("edge must be an object");
      if (!je.contains("id") || !je.at("id").is_string())
        throw Error("edge missing string \"id\"");
      std::string id = je.at("id").get<std::string>();
      if (!edge_ids.insert(id).second)
        throw Error("duplicate edge id '" + id + "'");
      if (!je.contains("att") || !je.at("att").is_array())
        throw Error("edge '" + id + "' missing \"att\" array");
      if (!je.contains("label"))
        throw Error("edge '" + id + "' missing \"label\"");
      HlEdge e;
      for (const json& a : je.at("att"))
        e.att.push_back(node_ix(a, "edge '" + id + "' attachment"));
      e.label = parse_type_str(je.at("label"), "edge '" + id + "' label");
      if (static_cast<int>(e.att.size()) != e.label.rank())
        throw Error("edge '" + id + "' attaches " +
                    std::to_string(e.att.size()) +
                    " node(s) but its label '" + e.label.key() +
                    "' has rank " + std::to_string(e.label.rank()));
      g.edges.push_back(std::move(e));
    }
    const json& ext = j.at("ext");
    if (!ext.is_array()) throw Error("\"ext\" must be an array");
    for (const json& x : ext) g.ext.push_back(node_ix(x, "external entry"));
    return g;
  };

  resolve = [&](const std::string& name) -> Hypergraph {
    if (auto it = done.find(name); it != done.end()) return it->second;
    if (!graphs || !graphs->contains(name))
      throw Error("unknown graph reference '@" + name + "'");
    if (!busy.insert(name).second)
      throw Error("cyclic graph reference '@" + name + "'");
    Hypergraph g = parse_graph(graphs->at(name));
    busy.erase(name);
    done.emplace(name, g);
    return g;
  };

  auto it = root.find("sequent");
  if (it == root.end()) throw Error("missing \"sequent\"");
  if (!it->is_object()) throw Error("\"sequent\" must be an object");
  if (!it->contains("lhs") || !it->contains("rhs"))
    throw Error("\"sequent\" needs \"lhs\" and \"rhs\"");
  const json& jl = it->at("lhs");
  HlSequent s;
  if (jl.is_string()) {
    std::string ref = jl.get<std::string>();
    if (ref.empty() || ref[0] != '@')
      throw Error("\"lhs\" string must be an '@' graph reference");
    s.lhs = resolve(ref.substr(1));
  } else if (jl.is_object()) {
    s.lhs = parse_graph(jl);
  } else {
    throw Error("\"lhs\" must be a graph or an '@' reference");
  }
  s.rhs = parse_type_str(it->at("rhs"), "\"rhs\"");
  validate_sequent(s);
  return s;
}

std::string hl_sequent_to_json(const HlSequent& s, int indent) {
  json graphs = json::object();
  std::map<std::string, std::string> byname;
  int counter = 0;
  std::function<std::string(const Hypergraph&)> add_graph;
  std::function<std::string(const HlType&)> type_str;
  std::function<json(const Hypergraph&)> graph_json = [&](const Hypergraph& g) {
    json jg;
    json jn = json::array();
    for (int v = 0; v < g.node_count; ++v) jn.push_back(v);
    jg["nodes"] = std::move(jn);
    json je = json::array();
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      json e;
      e["id"] = "e" + std::to_string(i);
      e["att"] = g.edges[i].att;
      e["label"] = type_str(g.edges[i].label);
      je.push_back(std::move(e));
    }
    jg["edges"] = std::move(je);
    jg["ext"] = g.ext;
    return jg;
  };
  add_graph = [&](const Hypergraph& g) -> std::string {
    std::string ck = canonical_key(g);
    if (auto it = byname.find(ck); it != byname.end()) return it->second;
    std::string name = "g" + std::to_string(counter++);
    byname.emplace(std::move(ck), name);
    graphs[name] = graph_json(g);
    return name;
  };
  type_str = [&](const HlType& t) -> std::string {
    switch (t.kind()) {
      case HlKind::HPrim:
      case HlKind::HDollar:
        return t.key();
      case HlKind::HDiv:
        return "(" + type_str(t.numerator()) + " div @" +
               add_graph(t.denominator()) + ")";
      case HlKind::HTimes:
        return "times @" + add_graph(t.body());
    }
    throw Error("invalid type");
  };
  json jl = graph_json(s.lhs);
  std::string rhs = type_str(s.rhs);
  graphs["lhs"] = std::move(jl);
  json root;
  root["graphs"] = std::move(graphs);
  root["sequent"] = {{"lhs", "@lhs"}, {"rhs", rhs}};
  return root.dump(indent);
}

// ---------------------------------------------------------------------------
// DOT export

std::string hypergraph_to_dot(const Hypergraph& g) {
  auto esc = [](const std::string& s) {
    std::string r;
    for (char c : s) {
      if (c == '"' || c == '\\') r += '\\';
      r += c;
    }
    return r;
  };
  std::ostringstream o;
  o << "digraph hypergraph {\n  rankdir=LR;\n"
    << "  node [shape=circle, fontsize=10];\n";
  std::vector<int> extpos(g.node_count, -1);
  for (std::size_t i = 0; i < g.ext.size(); ++i)
    extpos[g.ext[i]] = static_cast<int>(i);
  for (int v = 0; v < g.node_count; ++v) {
    o << "  v" << v << " [label=\"" << v;
    if (extpos[v] >= 0) o << " (" << extpos[v] + 1 << ")";
    o << "\"";
    if (extpos[v] >= 0) o << ", peripheries=2";
    o << "];\n";
  }
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const HlEdge& e = g.edges[i];
    if (e.att.size() == 2) {
      o << "  v" << e.att[0] << " -> v" << e.att[1] << " [label=\""
        << esc(e.label.key()) << "\"];\n";
    } else {
      o << "  h" << i << " [shape=box, label=\"" << esc(e.label.key())
        << "\"];\n";
      for (std::size_t t = 0; t < e.att.size(); ++t)
        o << "  h" << i << " -> v" << e.att[t] << " [label=\"" << t + 1
          << "\", style=dashed];\n";
    }
  }
  o << "}\n";
  return o.str();
}

}  // namespace cyclam
