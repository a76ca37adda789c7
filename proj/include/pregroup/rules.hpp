#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pregroup/poset.hpp"
#include "pregroup/word.hpp"

namespace pregroup {

// Rule tags in canonical order; this order is the primary sort key for
// step enumeration and the names below are the exact trace strings.
enum class RuleTag {
  Con,
  PiCon,
  IndC,
  Exp,
  PiExp,
  IndE,
  Ind,
  PiInd,
  MInd,
  Pre,
  RPre,
};
inline constexpr int kRuleCount = 11;

const char* rule_name(RuleTag t);
std::optional<RuleTag> rule_from_name(const std::string& name);

bool is_contraction(RuleTag t);  // CON, PI_CON, IND_C
bool is_expansion(RuleTag t);    // EXP, PI_EXP, IND_E
bool is_special(RuleTag t);      // IND, PI_IND, M_IND, PRE, R_PRE

// Which side(s) admit precyclic swaps.
enum class Precyclic { None, Left, Right, Both };
// Mixed-conversion direction discipline: directed licenses decorate at
// effective-even degree and un-decorate at effective-odd degree only;
// symmetric licenses both directions at any degree.
enum class MindMode { Directed, Symmetric };

const char* precyclic_name(Precyclic p);
std::optional<Precyclic> precyclic_from_name(const std::string& name);
const char* mind_name(MindMode m);
std::optional<MindMode> mind_from_name(const std::string& name);

// One-step rewrite configuration.  The clamps are part of the relation
// being decided: a step whose result exceeds them is simply not licensed.
struct RuleContext {
  Poset poset;
  Precyclic precyclic = Precyclic::None;
  MindMode mind = MindMode::Directed;
  // Mixed conversions may change the atom along the order when set;
  // default keeps atom and content equal (a <-> pi(a)).
  bool ordered_mind = false;
  // Run-level decoration of multi-term runs (off by default; single-term
  // conversions cover everything the shipped grammars need).
  bool deep_pi = false;
  std::vector<std::string> insert_atoms;  // sorted, unique
  std::vector<Word> insert_contents;      // sorted by render, unique
  int max_degree = 6;    // |degree| clamp anywhere in a word
  int max_len = 16;      // length clamp per nesting level
  int max_pi_depth = 1;  // pi nesting clamp
  int max_block = 2;     // swap block length clamp per side
};

// Payloads.  Insertion payloads carry the inserted pair in insertion
// order; swap payloads carry the block lengths and the applied shift.
struct NoPayload {
  friend bool operator==(const NoPayload&, const NoPayload&) { return true; }
};
struct InsertPayload {
  Term left, right;
  friend bool operator==(const InsertPayload& a, const InsertPayload& b) {
    return a.left == b.left && a.right == b.right;
  }
};
struct SubstPayload {
  std::string from, to;
  friend bool operator==(const SubstPayload& a, const SubstPayload& b) {
    return a.from == b.from && a.to == b.to;
  }
};
struct MindPayload {
  bool decorate = true;  // false = un-decorate
  std::string atom;      // simple side
  std::string inner;     // content side
  friend bool operator==(const MindPayload& a, const MindPayload& b) {
    return a.decorate == b.decorate && a.atom == b.atom && a.inner == b.inner;
  }
};
struct SwapPayload {
  int len_a = 1, len_b = 1;
  int shift = 2;  // +2 or -2, applied to the moved block
  friend bool operator==(const SwapPayload& a, const SwapPayload& b) {
    return a.len_a == b.len_a && a.len_b == b.len_b && a.shift == b.shift;
  }
};
struct WrapPayload {
  bool wrap = true;
  int len = 1;     // run length (wrap) or spliced length (unwrap)
  int degree = 0;  // degree of the produced/consumed pi wrapper
  friend bool operator==(const WrapPayload& a, const WrapPayload& b) {
    return a.wrap == b.wrap && a.len == b.len && a.degree == b.degree;
  }
};
using Payload =
    std::variant<NoPayload, InsertPayload, SubstPayload, MindPayload, SwapPayload, WrapPayload>;

// A step addresses a nesting level by the indices of the Pi terms
// descended into (outermost first; empty = top level) and an index at
// that level.  For swaps the position is where block A starts.
struct Step {
  RuleTag rule = RuleTag::Con;
  std::vector<int> path;
  int position = 0;
  Payload payload;
};

bool operator==(const Step& a, const Step& b);
inline bool operator!=(const Step& a, const Step& b) { return !(a == b); }
// Canonical order: rule tag, then path (lexicographic), then position,
// then payload.
bool step_less(const Step& a, const Step& b);
// Debug/text form, e.g. IND path=[] pos=0 {n->p}.
std::string render(const Step& s);

// Rule family bitmask.
struct RuleSet {
  uint16_t bits = 0;
  static RuleSet of(std::initializer_list<RuleTag> tags);
  static RuleSet contractions();
  static RuleSet expansions();
  static RuleSet specials();
  static RuleSet all();
  bool has(RuleTag t) const { return bits & (1u << static_cast<int>(t)); }
  RuleSet operator|(RuleSet o) const { return RuleSet{static_cast<uint16_t>(bits | o.bits)}; }
};

// All licensed steps on w within the given families, canonically ordered.
std::vector<Step> enumerate_steps(const Word& w, RuleSet families, const RuleContext& ctx);

// Applies s to w if licensed; otherwise returns nothing and, when `error`
// is given, a diagnostic.
std::optional<Word> try_apply(const Word& w, const Step& s, const RuleContext& ctx,
                              std::string* error = nullptr);

// All pairs (v, s) with s licensed on v and apply(v, s) = w, for the given
// families, inserted material drawn from the ctx alphabets.  Ordered by
// step, then by the rendering of v.
std::vector<std::pair<Word, Step>> enumerate_predecessors(const Word& w, RuleSet families,
                                                          const RuleContext& ctx);

}  // namespace pregroup
