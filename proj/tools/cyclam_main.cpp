// cyclam — proof search, grammars, transformations and language models for
// the Lambek calculus with cyclic shift and its relatives.
//
// Exit codes: 0 = derivable / true / member, 1 = the negative answer,
// 2 = usage, parse or fragment error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cyclam/formula.hpp"
#include "cyclam/grammar.hpp"
#include "cyclam/proof.hpp"
#include "cyclam/regsem.hpp"
#include "cyclam/search.hpp"
#include "cyclam/transforms.hpp"
#include "json.hpp"

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kError = 2;

void write_report(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw cyclam::Error("cannot write " + path);
  out << content;
  if (!content.empty() && content.back() != '\n') out << '\n';
}

// ---------------------------------------------------------------------- prove

struct ProveArgs {
  std::string system;
  std::string sequent;
  std::string proof_json;
  std::string latex;
  int cut_budget = 0;
};

cyclam::SystemId system_or_die(const std::string& name) {
  auto sys = cyclam::system_from_name(name);
  if (!sys) throw cyclam::Error("unknown system '" + name + "' (L, Lneck, Lcs, Lrev, Lbrac)");
  return *sys;
}

int run_prove(const ProveArgs& a) {
  const cyclam::SystemId sys = system_or_die(a.system);
  const cyclam::Sequent s = cyclam::parse_sequent(a.sequent);
  cyclam::Prover prover(cyclam::SearchConfig{sys, a.cut_budget});
  auto proof = prover.derive(s);
  if (!proof) {
    std::cout << "not derivable\n";
    return kNo;
  }
  std::cout << "derivable\n";
  if (!a.proof_json.empty()) write_report(a.proof_json, cyclam::proof_to_json(*proof, 2));
  if (!a.latex.empty()) write_report(a.latex, cyclam::proof_to_latex(*proof));
  return kYes;
}

std::string slurp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cyclam::Error("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// ---------------------------------------------------------------------- grammar

// Words with spaces are split on them (multi-character symbols); otherwise
// every character is one symbol.
cyclam::Word split_word(const std::string& text) {
  cyclam::Word w;
  if (text.find_first_of(" \t") != std::string::npos) {
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) w.push_back(tok);
  } else {
    for (char c : text) w.emplace_back(1, c);
  }
  return w;
}

std::string join_word(const cyclam::Word& w) {
  bool all_single = true;
  for (const std::string& s : w) all_single = all_single && s.size() == 1;
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && !all_single) out += ' ';
    out += w[i];
  }
  return out;
}

struct GrammarArgs {
  std::string action;
  std::string file;
  std::string word;
  std::string witness;
  std::string out = "-";
  int max_len = 4;
  int cut_budget = 0;
  bool perm = false;
};

int run_grammar(const GrammarArgs& a) {
  if (a.action == "member") {
    const cyclam::Grammar g = cyclam::parse_grammar(slurp_file(a.file));
    if (a.word.empty()) throw cyclam::Error("grammar member needs a word");
    cyclam::MemberWitness w;
    const bool yes = cyclam::member(g, split_word(a.word), &w, a.cut_budget);
    std::cout << (yes ? "member\n" : "not a member\n");
    if (yes && !a.witness.empty()) {
      nlohmann::json j;
      j["assignment"] = nlohmann::json::array();
      for (const auto& t : w.assignment) j["assignment"].push_back(cyclam::print_formula(t));
      j["proof"] = nlohmann::json::parse(cyclam::proof_to_json(w.proof));
      write_report(a.witness, j.dump(2));
    }
    return yes ? kYes : kNo;
  }
  if (a.action == "enum") {
    const cyclam::Grammar g = cyclam::parse_grammar(slurp_file(a.file));
    std::string report;
    for (const auto& w : cyclam::enumerate_language(g, a.max_len, a.cut_budget))
      report += join_word(w) + "\n";
    write_report(a.out, report);
    return kYes;
  }
  if (a.action == "import") {
    const auto rl = cyclam::parse_right_linear(slurp_file(a.file));
    cyclam::Grammar g = cyclam::import_right_linear(rl);
    if (a.perm) g = cyclam::cs_embed_grammar(g);
    write_report(a.out, cyclam::print_grammar(g));
    return kYes;
  }
  if (a.action == "perm") {
    const auto rl = cyclam::parse_right_linear(slurp_file(a.file));
    std::string report;
    for (const auto& w : cyclam::perm_closure_oracle(rl, a.max_len))
      report += join_word(w) + "\n";
    write_report(a.out, report);
    return kYes;
  }
  throw cyclam::Error("unknown grammar action '" + a.action +
                      "' (member, enum, import, perm)");
}

// ------------------------------------------------------------------ transform

struct TransformArgs {
  std::string kind;
  std::string formula;
  int n = -1;
};

int run_transform(const TransformArgs& a) {
  const cyclam::Formula f = cyclam::parse_formula(a.formula);
  auto need_n = [&]() {
    if (a.n < 0) throw cyclam::Error("'" + a.kind + "' needs --N <non-negative int>");
    return a.n;
  };
  cyclam::Formula out;
  if (a.kind == "box") out = cyclam::box(f);
  else if (a.kind == "eN") out = cyclam::e_n(f, need_n());
  else if (a.kind == "oN") out = cyclam::o_n(f, need_n());
  else if (a.kind == "unneck") out = cyclam::unneck(f);
  else if (a.kind == "calA") out = cyclam::cal_A(f);
  else if (a.kind == "calS") out = cyclam::cal_S(f);
  else if (a.kind == "tn") out = cyclam::t_n(f, need_n());
  else throw cyclam::Error("unknown transform '" + a.kind +
                           "' (box, eN, oN, unneck, calA, calS, tn)");
  std::cout << cyclam::print_formula(out) << '\n';
  return kYes;
}

// ------------------------------------------------------------------ semantics

struct SemanticsArgs {
  std::string action;
  std::string sequent;
  std::vector<std::string> models;  // name=automaton.json
  std::string out = "-";
  std::string alphabet = "a,b";
  int max_states = 2;
  int samples = 500;
  std::uint32_t seed = 0;
  bool allow_epsilon = false;
};

std::vector<std::string> split_alphabet(const std::string& text) {
  std::vector<std::string> out;
  if (text.find(',') != std::string::npos) {
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ','))
      if (!cur.empty()) out.push_back(cur);
  } else {
    for (char c : text) out.emplace_back(1, c);
  }
  return out;
}

// Shortest word separating the antecedent language from the succedent one.
std::optional<cyclam::Word> semantic_witness(const cyclam::Sequent& s,
                                             const cyclam::Interpretation& m) {
  cyclam::Automaton lhs = cyclam::interpret(s.lhs.front(), m);
  for (std::size_t i = 1; i < s.lhs.size(); ++i)
    lhs = cyclam::lang_concat(lhs, cyclam::interpret(s.lhs[i], m));
  return cyclam::lang_difference_witness(lhs, cyclam::interpret(s.rhs, m));
}

std::string witness_line(const std::optional<cyclam::Word>& w) {
  if (!w) return "";
  return "witness: " + (w->empty() ? std::string("(empty word)") : join_word(*w)) +
         "\n";
}

int run_semantics(const SemanticsArgs& a) {
  const cyclam::Sequent s = cyclam::parse_sequent(a.sequent);
  const cyclam::EpsilonMode mode = a.allow_epsilon
                                       ? cyclam::EpsilonMode::Allow
                                       : cyclam::EpsilonMode::Forbid;
  const std::string mode_note =
      "(epsilon mode: " + std::string(cyclam::epsilon_mode_name(mode)) + ")";

  if (a.action == "check") {
    if (a.models.empty())
      throw cyclam::Error("semantics check needs -m <primitive>=<automaton.json>");
    cyclam::Interpretation m;
    m.epsilon_mode = mode;
    for (const std::string& binding : a.models) {
      const auto eq = binding.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == binding.size())
        throw cyclam::Error("model binding must look like p=model.json, got '" +
                            binding + "'");
      const std::string name = binding.substr(0, eq);
      if (!m.primitives
               .emplace(name, cyclam::automaton_from_json(
                                  slurp_file(binding.substr(eq + 1))))
               .second)
        throw cyclam::Error("primitive '" + name + "' bound twice");
    }
    bool vacuous = false;
    const bool yes = cyclam::holds(s, m, &vacuous);
    if (vacuous)
      std::cerr << "warning: a residual divisor language is empty; the "
                   "quantifier over it is vacuous\n";
    std::string report = (yes ? "holds " : "fails ") + mode_note + "\n";
    if (!yes) report += witness_line(semantic_witness(s, m));
    write_report(a.out, report);
    return yes ? kYes : kNo;
  }

  if (a.action == "countermodel") {
    cyclam::CountermodelConfig cfg;
    cfg.max_states = a.max_states;
    cfg.samples = a.samples;
    cfg.seed = a.seed;
    cfg.alphabet = split_alphabet(a.alphabet);
    cfg.epsilon_mode = mode;
    const auto found = cyclam::countermodel_search(s, cfg);
    if (!found) {
      write_report(a.out, "no countermodel found after " +
                              std::to_string(cfg.samples) + " samples " +
                              mode_note + "\n");
      return kNo;
    }
    std::string report = "countermodel found " + mode_note + "\n";
    for (const auto& [name, automaton] : found->primitives)
      report += name + " = " + cyclam::automaton_to_json(automaton) + "\n";
    report += witness_line(semantic_witness(s, *found));
    write_report(a.out, report);
    return kYes;
  }

  throw cyclam::Error("unknown semantics action '" + a.action +
                      "' (check, countermodel)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lambek calculus with cyclic shift: provers, grammars, models"};
  app.require_subcommand(1);

  ProveArgs prove;
  auto* cmd_prove = app.add_subcommand("prove", "decide a sequent");
  cmd_prove->add_option("system", prove.system, "L | Lneck | Lcs | Lrev | Lbrac")
      ->required();
  cmd_prove->add_option("sequent", prove.sequent, "e.g. \"q * p -> (p * q)^c\"")
      ->required();
  cmd_prove->add_option("--proof-json", prove.proof_json,
                        "write the proof tree as JSON to a file ('-' = stdout)");
  cmd_prove->add_option("--latex", prove.latex,
                        "write an inference-tree rendering ('-' = stdout)");
  cmd_prove->add_option("--cut-budget", prove.cut_budget,
                        "maximum cut applications (Lbrac only)");

  GrammarArgs grammar;
  auto* cmd_grammar = app.add_subcommand("grammar", "categorial grammar queries");
  cmd_grammar->add_option("action", grammar.action, "member | enum | import | perm")
      ->required();
  cmd_grammar
      ->add_option("file", grammar.file,
                   "grammar file (member, enum) or right-linear file (import, perm)")
      ->required();
  cmd_grammar->add_option("word", grammar.word,
                          "word to test; spaces split multi-character symbols");
  cmd_grammar->add_option("--max-len", grammar.max_len,
                          "length bound for enum / perm (default 4)");
  cmd_grammar->add_option("--cut-budget", grammar.cut_budget,
                          "cut budget for membership search (Lbrac only)");
  cmd_grammar->add_option("--witness", grammar.witness,
                          "write the found assignment and proof as JSON ('-' = stdout)");
  cmd_grammar->add_option("-o,--out", grammar.out,
                          "report destination (default '-' = stdout)");
  cmd_grammar->add_flag("--perm", grammar.perm,
                        "import: follow up with the division-product embedding");

  TransformArgs transform;
  auto* cmd_transform =
      app.add_subcommand("transform", "apply a formula transformation");
  cmd_transform
      ->add_option("kind", transform.kind, "box | eN | oN | unneck | calA | calS | tn")
      ->required();
  cmd_transform->add_option("formula", transform.formula, "input formula")->required();
  cmd_transform->add_option("--N", transform.n, "size bound N (eN, oN) or index (tn)");

  SemanticsArgs semantics;
  auto* cmd_semantics =
      app.add_subcommand("semantics", "regular-language models of sequents");
  cmd_semantics->add_option("action", semantics.action, "check | countermodel")
      ->required();
  cmd_semantics->add_option("sequent", semantics.sequent, "e.g. \"p^c -> p\"")
      ->required();
  cmd_semantics->add_option(
      "-m,--model", semantics.models,
      "bind a primitive to an automaton file, e.g. -m p=a.json (repeatable)");
  cmd_semantics->add_option("--max-states", semantics.max_states,
                            "countermodel: sampled automaton state bound (default 2)");
  cmd_semantics->add_option("--samples", semantics.samples,
                            "countermodel: number of random draws (default 500)");
  cmd_semantics->add_option("--seed", semantics.seed,
                            "countermodel: sampler seed (default 0)");
  cmd_semantics->add_option("--alphabet", semantics.alphabet,
                            "countermodel: alphabet, e.g. ab or a,b (default a,b)");
  cmd_semantics->add_flag("--allow-epsilon", semantics.allow_epsilon,
                          "allow the empty word in primitive languages");
  cmd_semantics->add_option("-o,--out", semantics.out,
                            "report destination (default '-' = stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (cmd_prove->parsed()) return run_prove(prove);
    if (cmd_grammar->parsed()) return run_grammar(grammar);
    if (cmd_transform->parsed()) return run_transform(transform);
    if (cmd_semantics->parsed()) return run_semantics(semantics);
  } catch (const cyclam::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
