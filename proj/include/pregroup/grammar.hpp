#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pregroup/engine.hpp"

namespace pregroup {

struct GrammarError : std::runtime_error {
  int line;  // 1-based; 0 when not tied to a line
  GrammarError(int line_, const std::string& message)
      : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + message
                                     : message),
        line(line_) {}
};

struct LexEntry {
  std::string token;
  std::vector<Word> typings;  // alternatives, declaration order

  friend bool operator==(const LexEntry& a, const LexEntry& b) {
    return a.token == b.token && a.typings == b.typings;
  }
};

// A lexicalised grammar over a free pi-augmented pregroup: an atom order,
// a lexicon and target types, plus the precyclicity/conversion switches.
struct Grammar {
  std::vector<std::string> atoms;  // declaration order, unique
  std::vector<std::pair<std::string, std::string>> order;
  std::vector<std::pair<std::string, std::string>> equiv;
  Precyclic precyclic = Precyclic::None;
  MindMode mind = MindMode::Directed;
  std::vector<Word> targets;
  std::vector<LexEntry> lexicon;  // declaration order, unique tokens

  // order plus both directions of every equiv line.
  std::vector<std::pair<std::string, std::string>> order_pairs() const;
  const LexEntry* find(const std::string& token) const;

  friend bool operator==(const Grammar& a, const Grammar& b) {
    return a.atoms == b.atoms && a.order == b.order && a.equiv == b.equiv &&
           a.precyclic == b.precyclic && a.mind == b.mind && a.targets == b.targets &&
           a.lexicon == b.lexicon;
  }
};

// Line-oriented grammar file format ('#' starts a comment):
//   atoms: <atom> <atom> ...
//   order: <atom> -> <atom>          (repeatable)
//   equiv: <atom> <-> <atom>         (repeatable; two order edges)
//   precyclic: left | right | both | none
//   mind: directed | symmetric       (optional; default directed)
//   target: <word> ( ; <word> )*
//   lex "<token>": <word> ( | <word> )*
// Duplicate lex lines for one token merge their alternatives.
Grammar load_grammar(const std::string& text);
Grammar load_grammar_file(const std::string& path);
// Emits the format above; load_grammar(serialize(g)) == g.
std::string serialize(const Grammar& g);

// Splits a sentence on whitespace and greedily matches the longest
// multi-word lexicon token at each point.  Throws GrammarError naming the
// first word that starts no token.
std::vector<std::string> tokenize(const Grammar& g, const std::string& sentence);

// All candidate typings: concatenations over the Cartesian product of
// per-token alternatives (earlier tokens vary slowest), deduplicated
// keeping first occurrence.  Throws GrammarError on an unknown token.
std::vector<Word> type_sentence(const Grammar& g, const std::vector<std::string>& tokens);

struct Verdict {
  bool accepted = false;
  bool unknown = false;  // no typing accepted, some search hit its budget
  std::vector<std::string> tokens;
  Word typing;          // the accepted typing, when accepted
  SearchResult result;  // the accepted search, when accepted
  int typings_tried = 0;
};

// Tries reduce_to(typing, targets) on each candidate typing in order and
// accepts on the first derivable one.  Rejected only when every typing's
// bounded space was exhausted without success.
Verdict check(const Grammar& g, const std::vector<std::string>& tokens, const Budget& budget);

// The rewrite context check() uses: grammar order and switches, insertion
// alphabets and clamps drawn from the given words plus the targets.
RuleContext grammar_context(const Grammar& g, const Budget& budget,
                            const std::vector<Word>& words);

}  // namespace pregroup
