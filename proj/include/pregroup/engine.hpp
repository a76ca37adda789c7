#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pregroup/rules.hpp"

namespace pregroup {

// Search budget.  Negative clamp values mean "derive from the inputs":
// degree = max input degree + 4, length = longest input level + 4, depth =
// max(1, deepest input nesting).
struct Budget {
  int max_steps = 64;
  long long max_visited = 200000;
  int max_degree = -1;
  int max_len = -1;
  int max_pi_depth = -1;
  bool parallel = false;
};

enum class SearchStatus { Derivable, NotDerivable, Unknown };
// derivable | not_derivable | unknown
const char* status_name(SearchStatus s);

// A derivation records the start word plus each applied step and the word
// it produced; words.size() == steps.size().
struct Derivation {
  Word start;
  std::vector<Step> steps;
  std::vector<Word> words;

  const Word& final_word() const { return words.empty() ? start : words.back(); }
};

// Normal form: no contraction-family step after an expansion-family step.
bool is_normal(const Derivation& d);

struct SearchResult {
  SearchStatus status = SearchStatus::Unknown;
  std::optional<Derivation> derivation;
  long long visited = 0;
  bool exhausted = false;  // the bounded space was fully explored
};

// Breadth-first closure.  Words are stored in discovery order (the start
// word first); parent/parent_step give first-discovery back-pointers.
// complete means no reachable word was cut off by max_steps or max_visited.
struct Closure {
  std::vector<Word> words;
  std::map<std::string, int> index;  // render(word) -> position in words
  std::vector<int> dist;
  std::vector<int> parent;
  std::vector<Step> parent_step;
  bool complete = false;

  bool contains(const Word& w) const { return index.count(render(w)) != 0; }
};

// Closure of start under forward application of the given families.
Closure forward_closure(const Word& start, RuleSet families, const RuleContext& ctx,
                        int max_steps, long long max_visited, bool parallel = false);
// Closure of target under predecessor enumeration: words[i] rewrites to
// target in dist[i] forward steps of the given families.
Closure backward_closure(const Word& target, RuleSet families, const RuleContext& ctx,
                         int max_steps, long long max_visited, bool parallel = false);

// Builds a rewrite context for the given order and inputs: the poset
// carries the declared atoms plus any atom appearing in words, the
// insertion alphabets cover those atoms and every decorated content
// appearing in words, and negative budget clamps are derived from words.
RuleContext make_context(const std::vector<std::string>& atoms,
                         const std::vector<std::pair<std::string, std::string>>& order_pairs,
                         Precyclic precyclic, MindMode mind, const Budget& budget,
                         const std::vector<Word>& words);

// Does w rewrite to one of targets under contractions and specials only?
// The first target discovered in breadth-first order wins, which makes the
// returned derivation the shortest and, among shortest, the one whose step
// sequence is lexicographically least in canonical step order.
SearchResult reduce_to(const Word& w, const std::vector<Word>& targets, const RuleContext& ctx,
                       const Budget& budget);

// reduce_to with the unit word as the only target.
SearchResult nullable(const Word& w, const RuleContext& ctx, const Budget& budget);

// Bidirectional search for a derivation x =>* y under all rule families.
// The result, when found, is normal: a contraction+special prefix followed
// by an expansion+special suffix.  Shortest total length wins, then the
// shortest prefix, then first discovery order.
SearchResult derive(const Word& x, const Word& y, const RuleContext& ctx, const Budget& budget);

struct ValidationReport {
  bool ok = true;
  int first_invalid = -1;  // step index, when !ok
  bool normal = false;
  std::string message;
};

// Checks every step of d: licensed at its word, canonical for its rule tag,
// and producing exactly the recorded next word.  The context is widened to
// cover the derivation's own words (clamps and insertion alphabets) so a
// derivation produced by the engine under any budget validates.
ValidationReport validate(const Derivation& d, const RuleContext& ctx);

// Step labels with conversion+contraction fusion: a top-level M_IND at
// position p immediately followed by a CON or PI_CON at p-1 or p collapses
// into one "M_CON" label.
std::vector<std::string> fused_rule_labels(const Derivation& d);

}  // namespace pregroup
