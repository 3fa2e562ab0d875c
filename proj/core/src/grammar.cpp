#include "cyclam/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "cyclam/search.hpp"
#include "cyclam/transforms.hpp"

namespace cyclam {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Strips a trailing comment and surrounding blanks; empty result = skip line.
std::string logical_line(const std::string& raw) {
  const std::size_t hash = raw.find('#');
  return trim(hash == std::string::npos ? raw : raw.substr(0, hash));
}

bool single_token(const std::string& s) {
  return !s.empty() && s.find_first_of(" \t") == std::string::npos;
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

void require_type_fragment(const Formula& f, SystemId sys, const std::string& where) {
  if (!fragment_ok(f, sys))
    throw Error(where + " '" + print_formula(f) + "' is outside the " +
                std::string(system_name(sys)) + " fragment");
}

}  // namespace

std::set<std::string> Grammar::alphabet() const {
  std::set<std::string> out;
  for (const auto& [sym, type] : lexicon) out.insert(sym);
  return out;
}

std::vector<Formula> Grammar::types_for(const std::string& symbol) const {
  std::vector<Formula> out;
  for (const auto& [sym, type] : lexicon)
    if (sym == symbol) out.push_back(type);
  return out;
}

Grammar parse_grammar(const std::string& text) {
  Grammar g;
  bool saw_system = false;
  bool saw_start = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = logical_line(raw);
    if (line.empty()) continue;
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw Error("grammar line " + std::to_string(lineno) +
                  ": expected 'key : value', got '" + line + "'");
    const std::string key = trim(line.substr(0, colon));
    const std::string value = trim(line.substr(colon + 1));
    if (!single_token(key))
      throw Error("grammar line " + std::to_string(lineno) + ": bad symbol '" +
                  key + "'");
    if (key == "system") {
      if (saw_system)
        throw Error("grammar line " + std::to_string(lineno) + ": duplicate system line");
      auto sys = system_from_name(value);
      if (!sys)
        throw Error("grammar line " + std::to_string(lineno) + ": unknown system '" +
                    value + "' (L, Lneck, Lcs, Lrev, Lbrac)");
      g.system = *sys;
      saw_system = true;
    } else if (key == "start") {
      if (saw_start)
        throw Error("grammar line " + std::to_string(lineno) + ": duplicate start line");
      g.distinguished = parse_formula(value);
      saw_start = true;
    } else {
      g.lexicon.emplace_back(key, parse_formula(value));
    }
  }
  if (!saw_start) throw Error("grammar has no 'start:' line");
  require_type_fragment(g.distinguished, g.system, "distinguished type");
  for (const auto& [sym, type] : g.lexicon)
    require_type_fragment(type, g.system, "lexicon type for '" + sym + "'");
  return g;
}

std::string print_grammar(const Grammar& g) {
  std::string out;
  out += "system: " + std::string(system_name(g.system)) + "\n";
  out += "start: " + print_formula(g.distinguished) + "\n";
  for (const auto& [sym, type] : g.lexicon)
    out += sym + " : " + print_formula(type) + "\n";
  return out;
}

namespace {

bool member_with(Prover& prover, const Grammar& g, const Word& word,
                 MemberWitness* witness) {
  if (word.empty())
    throw Error("grammar languages contain nonempty words only");
  std::vector<std::vector<Formula>> choices;
  choices.reserve(word.size());
  for (const std::string& sym : word) {
    auto types = g.types_for(sym);
    if (types.empty()) throw Error("symbol '" + sym + "' has no lexicon entries");
    choices.push_back(std::move(types));
  }
  // Odometer over per-position lexicon indices, leftmost position most
  // significant, so assignments come out in lexicographic order.
  std::vector<std::size_t> idx(word.size(), 0);
  for (;;) {
    std::vector<Formula> lhs;
    lhs.reserve(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) lhs.push_back(choices[i][idx[i]]);
    Sequent s{lhs, g.distinguished};
    if (auto proof = prover.derive(s)) {
      if (witness) {
        witness->assignment = std::move(lhs);
        witness->proof = *proof;
      }
      return true;
    }
    std::size_t pos = word.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < choices[pos].size()) break;
      idx[pos] = 0;
      if (pos == 0) return false;
    }
  }
}

}  // namespace

bool member(const Grammar& g, const Word& word, MemberWitness* witness,
            int cut_budget) {
  Prover prover(SearchConfig{g.system, cut_budget});
  return member_with(prover, g, word, witness);
}

std::vector<Word> enumerate_language(const Grammar& g, int max_len, int cut_budget) {
  std::vector<Word> out;
  const std::set<std::string> sigma_set = g.alphabet();
  const std::vector<std::string> sigma(sigma_set.begin(), sigma_set.end());
  if (sigma.empty() || max_len < 1) return out;
  Prover prover(SearchConfig{g.system, cut_budget});
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(len), 0);
    for (;;) {
      Word w;
      w.reserve(idx.size());
      for (std::size_t i : idx) w.push_back(sigma[i]);
      if (member_with(prover, g, w, nullptr)) out.push_back(std::move(w));
      std::size_t pos = idx.size();
      bool done = true;
      while (pos > 0) {
        --pos;
        if (++idx[pos] < sigma.size()) {
          done = false;
          break;
        }
        idx[pos] = 0;
      }
      if (done) break;
    }
  }
  return out;  // shortlex by construction
}

RightLinearGrammar parse_right_linear(const std::string& text) {
  RightLinearGrammar rl;
  bool saw_start = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = logical_line(raw);
    if (line.empty()) continue;
    if (line.rfind("start:", 0) == 0) {
      if (saw_start)
        throw Error("right-linear line " + std::to_string(lineno) +
                    ": duplicate start line");
      rl.start = trim(line.substr(6));
      if (!single_token(rl.start))
        throw Error("right-linear line " + std::to_string(lineno) + ": bad start symbol");
      saw_start = true;
      continue;
    }
    const std::size_t arrow = line.find("->");
    if (arrow == std::string::npos)
      throw Error("right-linear line " + std::to_string(lineno) +
                  ": expected 'X -> a Y' or 'X -> a', got '" + line + "'");
    const std::string lhs = trim(line.substr(0, arrow));
    if (!single_token(lhs))
      throw Error("right-linear line " + std::to_string(lineno) +
                  ": left side must be one nonterminal");
    std::istringstream rhs(line.substr(arrow + 2));
    std::vector<std::string> tokens;
    std::string tok;
    while (rhs >> tok) tokens.push_back(tok);
    if (tokens.empty() || tokens.size() > 2)
      throw Error("right-linear line " + std::to_string(lineno) +
                  ": productions have shape 'X -> a Y' or 'X -> a'");
    rl.productions.push_back({lhs, tokens[0], tokens.size() == 2 ? tokens[1] : ""});
  }
  if (!saw_start) throw Error("right-linear grammar has no 'start:' line");
  return rl;
}

Grammar import_right_linear(const RightLinearGrammar& rl) {
  std::set<std::string> terminals;
  for (const auto& p : rl.productions) terminals.insert(p.terminal);
  // One primitive per nonterminal, assigned in first-mention order so the
  // outcome does not depend on container iteration details.
  std::vector<std::string> mention_order{rl.start};
  auto mention = [&](const std::string& nt) {
    if (std::find(mention_order.begin(), mention_order.end(), nt) == mention_order.end())
      mention_order.push_back(nt);
  };
  for (const auto& p : rl.productions) {
    mention(p.lhs);
    if (!p.next.empty()) mention(p.next);
  }
  std::map<std::string, std::string> prim;
  std::set<std::string> used;
  for (const std::string& nt : mention_order) {
    std::string name;
    for (char c : nt) name += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    while (terminals.count(name) || used.count(name)) name += "_nt";
    prim[nt] = name;
    used.insert(name);
  }
  Grammar g;
  g.system = SystemId::L;
  g.distinguished = Formula::prim(prim.at(rl.start));
  for (const auto& p : rl.productions) {
    Formula type = p.next.empty()
                       ? Formula::prim(prim.at(p.lhs))
                       : Formula::over(Formula::prim(prim.at(p.lhs)),
                                       Formula::prim(prim.at(p.next)));
    const auto entry = std::make_pair(p.terminal, type);
    if (std::find(g.lexicon.begin(), g.lexicon.end(), entry) == g.lexicon.end())
      g.lexicon.push_back(entry);
  }
  return g;
}

namespace {

void rl_words(const RightLinearGrammar& rl, const std::string& nt, Word& prefix,
              int max_len, std::set<Word>& out) {
  for (const auto& p : rl.productions) {
    if (p.lhs != nt) continue;
    prefix.push_back(p.terminal);
    if (p.next.empty()) {
      if (static_cast<int>(prefix.size()) <= max_len) out.insert(prefix);
    } else if (static_cast<int>(prefix.size()) < max_len) {
      rl_words(rl, p.next, prefix, max_len, out);
    }
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Word> rl_language(const RightLinearGrammar& rl, int max_len) {
  std::set<Word> words;
  Word prefix;
  if (max_len >= 1) rl_words(rl, rl.start, prefix, max_len, words);
  std::vector<Word> out(words.begin(), words.end());
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

std::vector<Word> perm_closure_oracle(const RightLinearGrammar& rl, int max_len) {
  std::set<Word> closed;
  for (Word w : rl_language(rl, max_len)) {
    std::sort(w.begin(), w.end());
    do closed.insert(w);
    while (std::next_permutation(w.begin(), w.end()));
  }
  std::vector<Word> out(closed.begin(), closed.end());
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

std::optional<std::vector<int>> lemma1_check(const Sequent& s) {
  const std::size_t n = s.lhs.size();
  if (s.rhs.kind() != FKind::Prim || s.lhs.back().kind() != FKind::Prim)
    throw Error("lemma1_check expects p1/q1, ..., p_{n-1}/q_{n-1}, p_n -> s "
                "over primitives");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Formula& d = s.lhs[i];
    if (d.kind() != FKind::Over || d.numerator().kind() != FKind::Prim ||
        d.denominator().kind() != FKind::Prim)
      throw Error("lemma1_check expects p1/q1, ..., p_{n-1}/q_{n-1}, p_n -> s "
                  "over primitives");
  }
  if (n == 1) {
    if (s.lhs[0] == s.rhs) return std::vector<int>{};
    return std::nullopt;
  }
  std::vector<int> sigma(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) sigma[i] = static_cast<int>(i);
  auto num = [&](int i) { return s.lhs[static_cast<std::size_t>(i)].numerator(); };
  auto den = [&](int i) { return s.lhs[static_cast<std::size_t>(i)].denominator(); };
  do {
    bool ok = num(sigma.front()) == s.rhs && den(sigma.back()) == s.lhs.back();
    for (std::size_t i = 0; ok && i + 1 < sigma.size(); ++i)
      ok = den(sigma[i]) == num(sigma[i + 1]);
    if (ok) return sigma;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return std::nullopt;
}

Grammar evenize_grammar(const Grammar& g) {
  if (g.system != SystemId::LNeck)
    throw Error("evenize expects a grammar under Lneck");
  int n = g.distinguished.size();
  for (const auto& [sym, type] : g.lexicon) n = std::max(n, type.size());
  Grammar out;
  out.system = SystemId::LNeck;
  out.distinguished = e_n(g.distinguished, n);
  for (const auto& [sym, type] : g.lexicon)
    out.lexicon.emplace_back(sym, o_n(type, n));
  return out;
}

Grammar unneck_grammar(const Grammar& g) {
  if (g.system != SystemId::LNeck)
    throw Error("shift erasure expects a grammar under Lneck");
  Grammar out;
  out.system = SystemId::L;
  out.distinguished = unneck(g.distinguished);
  for (const auto& [sym, type] : g.lexicon)
    out.lexicon.emplace_back(sym, unneck(type));
  return out;
}

Grammar cs_embed_grammar(const Grammar& g) {
  if (g.system != SystemId::L && g.system != SystemId::LCS)
    throw Error("the division-product embedding expects a grammar under L or Lcs");
  Grammar out;
  out.system = SystemId::LNeck;
  out.distinguished = cal_S(g.distinguished);
  for (const auto& [sym, type] : g.lexicon)
    out.lexicon.emplace_back(sym, cal_A(type));
  return out;
}

}  // namespace cyclam
