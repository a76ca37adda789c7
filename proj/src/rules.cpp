#include "pregroup/rules.hpp"

#include <algorithm>
#include <cassert>
#include <tuple>

namespace pregroup {

namespace {

const char* kRuleNames[kRuleCount] = {"CON",   "PI_CON", "IND_C", "EXP", "PI_EXP", "IND_E",
                                      "IND",   "PI_IND", "M_IND", "PRE", "R_PRE"};

}  // namespace

const char* rule_name(RuleTag t) { return kRuleNames[static_cast<int>(t)]; }

std::optional<RuleTag> rule_from_name(const std::string& name) {
  for (int i = 0; i < kRuleCount; ++i) {
    if (name == kRuleNames[i]) return static_cast<RuleTag>(i);
  }
  return std::nullopt;
}

bool is_contraction(RuleTag t) {
  return t == RuleTag::Con || t == RuleTag::PiCon || t == RuleTag::IndC;
}
bool is_expansion(RuleTag t) {
  return t == RuleTag::Exp || t == RuleTag::PiExp || t == RuleTag::IndE;
}
bool is_special(RuleTag t) { return !is_contraction(t) && !is_expansion(t); }

const char* precyclic_name(Precyclic p) {
  switch (p) {
    case Precyclic::None: return "none";
    case Precyclic::Left: return "left";
    case Precyclic::Right: return "right";
    case Precyclic::Both: return "both";
  }
  return "none";
}

std::optional<Precyclic> precyclic_from_name(const std::string& name) {
  if (name == "none") return Precyclic::None;
  if (name == "left") return Precyclic::Left;
  if (name == "right") return Precyclic::Right;
  if (name == "both") return Precyclic::Both;
  return std::nullopt;
}

const char* mind_name(MindMode m) {
  return m == MindMode::Directed ? "directed" : "symmetric";
}

std::optional<MindMode> mind_from_name(const std::string& name) {
  if (name == "directed") return MindMode::Directed;
  if (name == "symmetric") return MindMode::Symmetric;
  return std::nullopt;
}

RuleSet RuleSet::of(std::initializer_list<RuleTag> tags) {
  RuleSet s;
  for (RuleTag t : tags) s.bits |= static_cast<uint16_t>(1u << static_cast<int>(t));
  return s;
}
RuleSet RuleSet::contractions() {
  return of({RuleTag::Con, RuleTag::PiCon, RuleTag::IndC});
}
RuleSet RuleSet::expansions() {
  return of({RuleTag::Exp, RuleTag::PiExp, RuleTag::IndE});
}
RuleSet RuleSet::specials() {
  return of({RuleTag::Ind, RuleTag::PiInd, RuleTag::MInd, RuleTag::Pre, RuleTag::RPre});
}
RuleSet RuleSet::all() { return contractions() | expansions() | specials(); }

bool operator==(const Step& a, const Step& b) {
  return a.rule == b.rule && a.path == b.path && a.position == b.position &&
         a.payload == b.payload;
}

namespace {

// Ordering key for payloads: variant index first, then contents.
using PayloadKey = std::tuple<int, std::string, std::string, int, int, int>;

PayloadKey payload_key(const Payload& p) {
  struct Visitor {
    PayloadKey operator()(const NoPayload&) const { return {0, "", "", 0, 0, 0}; }
    PayloadKey operator()(const InsertPayload& v) const {
      return {1, render(v.left), render(v.right), 0, 0, 0};
    }
    PayloadKey operator()(const SubstPayload& v) const { return {2, v.from, v.to, 0, 0, 0}; }
    PayloadKey operator()(const MindPayload& v) const {
      return {3, v.atom, v.inner, v.decorate ? 0 : 1, 0, 0};
    }
    PayloadKey operator()(const SwapPayload& v) const {
      return {4, "", "", v.len_a, v.len_b, v.shift};
    }
    PayloadKey operator()(const WrapPayload& v) const {
      return {5, "", "", v.wrap ? 0 : 1, v.len, v.degree};
    }
  };
  return std::visit(Visitor{}, p);
}

std::string payload_text(const Payload& p) {
  struct Visitor {
    std::string operator()(const NoPayload&) const { return "{}"; }
    std::string operator()(const InsertPayload& v) const {
      return "{insert " + render(v.left) + " " + render(v.right) + "}";
    }
    std::string operator()(const SubstPayload& v) const {
      return "{" + v.from + "->" + v.to + "}";
    }
    std::string operator()(const MindPayload& v) const {
      return std::string("{") + (v.decorate ? "decorate " : "undecorate ") + v.atom + "~" +
             v.inner + "}";
    }
    std::string operator()(const SwapPayload& v) const {
      return "{a:" + std::to_string(v.len_a) + " b:" + std::to_string(v.len_b) +
             " shift:" + std::to_string(v.shift) + "}";
    }
    std::string operator()(const WrapPayload& v) const {
      return std::string("{") + (v.wrap ? "wrap " : "unwrap ") + std::to_string(v.len) + " deg:" +
             std::to_string(v.degree) + "}";
    }
  };
  return std::visit(Visitor{}, p);
}

}  // namespace

bool step_less(const Step& a, const Step& b) {
  if (a.rule != b.rule) return static_cast<int>(a.rule) < static_cast<int>(b.rule);
  if (a.path != b.path) return a.path < b.path;
  if (a.position != b.position) return a.position < b.position;
  return payload_key(a.payload) < payload_key(b.payload);
}

std::string render(const Step& s) {
  std::string out = rule_name(s.rule);
  out += " path=[";
  for (size_t i = 0; i < s.path.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s.path[i]);
  }
  out += "] pos=";
  out += std::to_string(s.position);
  out += ' ';
  out += payload_text(s.payload);
  return out;
}

namespace {

bool odd(int d) { return d % 2 != 0; }

bool same_symbol(const Term& a, const Term& b) {
  if (a.kind != b.kind) return false;
  if (a.is_simple()) return a.atom == b.atom;
  return a.content == b.content;
}

// Forward deletion: ascending pair normally, descending under inversion.
bool deletable(const Term& l, const Term& r, bool inv) {
  if (!same_symbol(l, r)) return false;
  return inv ? l.degree == r.degree + 1 : r.degree == l.degree + 1;
}

bool atom_allowed(const RuleContext& ctx, const std::string& a) {
  return std::binary_search(ctx.insert_atoms.begin(), ctx.insert_atoms.end(), a);
}

bool content_allowed(const RuleContext& ctx, const Word& c) {
  std::string key = render(c);
  auto it = std::lower_bound(ctx.insert_contents.begin(), ctx.insert_contents.end(), key,
                             [](const Word& w, const std::string& k) { return render(w) < k; });
  return it != ctx.insert_contents.end() && render(*it) == key;
}

bool swap_allowed(int shift, bool inv, Precyclic mode) {
  bool left = mode == Precyclic::Left || mode == Precyclic::Both;
  bool right = mode == Precyclic::Right || mode == Precyclic::Both;
  bool up = shift > 0;  // raising swap moves the right block left
  if (inv) up = !up;
  return up ? left : right;
}

RuleTag deletion_tag(bool top, bool pi) {
  if (!top) return RuleTag::IndC;
  return pi ? RuleTag::PiCon : RuleTag::Con;
}
RuleTag insertion_tag(bool top, bool pi) {
  if (!top) return RuleTag::IndE;
  return pi ? RuleTag::PiExp : RuleTag::Exp;
}
RuleTag subst_tag(bool top) { return top ? RuleTag::Ind : RuleTag::PiInd; }
RuleTag mind_tag(bool top) { return top ? RuleTag::MInd : RuleTag::PiInd; }
RuleTag swap_tag(bool top, int shift) {
  if (!top) return RuleTag::PiInd;
  return shift > 0 ? RuleTag::Pre : RuleTag::RPre;
}

bool decorate_parity_ok(int degree, bool inv, MindMode mode) {
  if (mode == MindMode::Symmetric) return true;
  return !(odd(degree) ^ inv);  // effective-even degree
}
bool undecorate_parity_ok(int degree, bool inv, MindMode mode) {
  if (mode == MindMode::Symmetric) return true;
  return odd(degree) ^ inv;  // effective-odd degree
}

Word shift_block(Word block, int delta) {
  for (Term& t : block) t.degree += delta;
  return block;
}

bool degrees_ok(const Word& block, const RuleContext& ctx) {
  return max_abs_degree(block) <= ctx.max_degree;
}

bool mind_relation_ok(const RuleContext& ctx, const std::string& atom, const std::string& inner) {
  if (!ctx.ordered_mind && atom != inner) return false;
  if (!ctx.poset.has_atom(atom) || !ctx.poset.has_atom(inner)) return atom == inner;
  return ctx.poset.leq(atom, inner);
}

// -------- enumeration --------

struct Enumerator {
  const RuleContext& ctx;
  RuleSet fams;
  std::vector<Step> out;
  std::vector<int> path;

  void deletions(const Word& level, bool top, bool inv) {
    int n = static_cast<int>(level.size());
    for (int i = 0; i + 1 < n; ++i) {
      if (!deletable(level[i], level[i + 1], inv)) continue;
      if (!top && n - 2 < 1) continue;  // decorated contents stay non-empty
      RuleTag tag = deletion_tag(top, level[i].is_pi());
      if (fams.has(tag)) out.push_back({tag, path, i, NoPayload{}});
    }
  }

  void insertions(const Word& level, bool top, bool inv, int depth) {
    int n = static_cast<int>(level.size());
    if (n + 2 > ctx.max_len) return;
    bool want_simple = fams.has(insertion_tag(top, false));
    bool want_pi = fams.has(insertion_tag(top, true));
    if (!want_simple && !want_pi) return;
    for (int pos = 0; pos <= n; ++pos) {
      if (want_simple) {
        for (const std::string& a : ctx.insert_atoms) {
          for (int m = -ctx.max_degree; m + 1 <= ctx.max_degree; ++m) {
            Term lo = Term::simple(a, m), hi = Term::simple(a, m + 1);
            Term left = inv ? lo : hi, right = inv ? hi : lo;
            out.push_back({insertion_tag(top, false), path, pos,
                           InsertPayload{std::move(left), std::move(right)}});
          }
        }
      }
      if (want_pi) {
        for (const Word& c : ctx.insert_contents) {
          if (depth + 1 + pi_depth(c) > ctx.max_pi_depth) continue;
          if (!degrees_ok(c, ctx)) continue;
          for (int m = -ctx.max_degree; m + 1 <= ctx.max_degree; ++m) {
            Term lo = Term::pi(c, m), hi = Term::pi(c, m + 1);
            Term left = inv ? lo : hi, right = inv ? hi : lo;
            out.push_back({insertion_tag(top, true), path, pos,
                           InsertPayload{std::move(left), std::move(right)}});
          }
        }
      }
    }
  }

  void substitutions(const Word& level, bool top, bool inv) {
    if (!fams.has(subst_tag(top))) return;
    for (int i = 0; i < static_cast<int>(level.size()); ++i) {
      const Term& t = level[i];
      if (!t.is_simple() || !ctx.poset.has_atom(t.atom)) continue;
      bool eff_odd = odd(t.degree) ^ inv;
      const auto& targets = eff_odd ? ctx.poset.downward(t.atom) : ctx.poset.upward(t.atom);
      for (const std::string& b : targets) {
        out.push_back({subst_tag(top), path, i, SubstPayload{t.atom, b}});
      }
    }
  }

  void conversions(const Word& level, bool top, bool inv, int depth) {
    if (!fams.has(mind_tag(top))) return;
    for (int i = 0; i < static_cast<int>(level.size()); ++i) {
      const Term& t = level[i];
      if (t.is_simple()) {
        if (!decorate_parity_ok(t.degree, inv, ctx.mind)) continue;
        if (depth + 1 > ctx.max_pi_depth) continue;
        if (ctx.ordered_mind && ctx.poset.has_atom(t.atom)) {
          for (const std::string& b : ctx.poset.upward(t.atom)) {
            out.push_back({mind_tag(top), path, i, MindPayload{true, t.atom, b}});
          }
        } else {
          out.push_back({mind_tag(top), path, i, MindPayload{true, t.atom, t.atom}});
        }
      } else if (t.content.size() == 1 && t.content[0].is_simple() &&
                 t.content[0].degree == 0) {
        if (!undecorate_parity_ok(t.degree, inv, ctx.mind)) continue;
        const std::string& b = t.content[0].atom;
        if (ctx.ordered_mind && ctx.poset.has_atom(b)) {
          for (const std::string& a : ctx.poset.downward(b)) {
            out.push_back({mind_tag(top), path, i, MindPayload{false, a, b}});
          }
        } else {
          out.push_back({mind_tag(top), path, i, MindPayload{false, b, b}});
        }
      }
    }
  }

  void wraps(const Word& level, bool top, bool inv, int depth) {
    if (!ctx.deep_pi || !fams.has(mind_tag(top))) return;
    int n = static_cast<int>(level.size());
    for (int i = 0; i < n; ++i) {
      for (int len = 2; i + len <= n; ++len) {
        for (int k = -ctx.max_degree; k <= ctx.max_degree; ++k) {
          if (!decorate_parity_ok(k, inv, ctx.mind)) continue;
          if (depth + 1 > ctx.max_pi_depth) continue;
          Word content(level.begin() + i, level.begin() + i + len);
          content = adjoint_power(content, -k);
          if (!degrees_ok(content, ctx)) continue;
          if (depth + 1 + pi_depth(content) > ctx.max_pi_depth) continue;
          out.push_back({mind_tag(top), path, i, WrapPayload{true, len, k}});
        }
      }
      const Term& t = level[i];
      if (t.is_pi() && t.content.size() >= 2 &&
          undecorate_parity_ok(t.degree, inv, ctx.mind)) {
        if (n - 1 + static_cast<int>(t.content.size()) <= ctx.max_len &&
            degrees_ok(adjoint_power(t.content, t.degree), ctx)) {
          out.push_back(
              {mind_tag(top), path, i,
               WrapPayload{false, static_cast<int>(t.content.size()), t.degree}});
        }
      }
    }
  }

  void swaps(const Word& level, bool top, bool inv) {
    if (ctx.precyclic == Precyclic::None) return;
    int n = static_cast<int>(level.size());
    for (int i = 0; i < n; ++i) {
      if (!level[i].is_pi()) continue;
      for (int la = 1; la <= ctx.max_block && i + la <= n; ++la) {
        if (!level[i + la - 1].is_pi()) break;
        for (int lb = 1; lb <= ctx.max_block && i + la + lb <= n; ++lb) {
          if (!level[i + la + lb - 1].is_pi()) break;
          for (int shift : {2, -2}) {
            RuleTag tag = swap_tag(top, shift);
            if (!fams.has(tag)) continue;
            if (!swap_allowed(shift, inv, ctx.precyclic)) continue;
            Word moved(shift > 0 ? level.begin() + i + la : level.begin() + i,
                       shift > 0 ? level.begin() + i + la + lb : level.begin() + i + la);
            if (!degrees_ok(shift_block(moved, shift), ctx)) continue;
            out.push_back({tag, path, i, SwapPayload{la, lb, shift}});
          }
        }
      }
    }
  }

  void walk(const Word& level, bool inv, int depth) {
    bool top = path.empty();
    deletions(level, top, inv);
    insertions(level, top, inv, depth);
    substitutions(level, top, inv);
    conversions(level, top, inv, depth);
    wraps(level, top, inv, depth);
    swaps(level, top, inv);
    for (int i = 0; i < static_cast<int>(level.size()); ++i) {
      if (!level[i].is_pi()) continue;
      path.push_back(i);
      walk(level[i].content, inv ^ odd(level[i].degree), depth + 1);
      path.pop_back();
    }
  }
};

}  // namespace

std::vector<Step> enumerate_steps(const Word& w, RuleSet families, const RuleContext& ctx) {
  Enumerator e{ctx, families};
  e.walk(w, false, 0);
  std::sort(e.out.begin(), e.out.end(), step_less);
  return std::move(e.out);
}

namespace {

struct LevelRef {
  Word* level = nullptr;
  bool inv = false;
  int depth = 0;
};

bool resolve(Word& w, const std::vector<int>& path, LevelRef* out, std::string* error) {
  LevelRef r;
  r.level = &w;
  for (int idx : path) {
    if (idx < 0 || idx >= static_cast<int>(r.level->size()) || !(*r.level)[idx].is_pi()) {
      if (error) *error = "path does not address a pi term";
      return false;
    }
    Term& t = (*r.level)[idx];
    r.inv ^= odd(t.degree);
    r.level = &t.content;
    r.depth += 1;
  }
  *out = r;
  return true;
}

bool fail(std::string* error, const char* message) {
  if (error) *error = message;
  return false;
}

// Applies s at the resolved level; reports licensing failures.
bool apply_at(LevelRef ref, const Step& s, bool top, const RuleContext& ctx,
              std::string* error) {
  Word& level = *ref.level;
  bool inv = ref.inv;
  int n = static_cast<int>(level.size());
  int pos = s.position;

  if (std::holds_alternative<NoPayload>(s.payload)) {
    if (pos < 0 || pos + 1 >= n) return fail(error, "deletion position out of range");
    if (!deletable(level[pos], level[pos + 1], inv)) return fail(error, "pair is not deletable");
    if (s.rule != deletion_tag(top, level[pos].is_pi())) return fail(error, "rule tag mismatch");
    if (!top && n - 2 < 1) return fail(error, "deletion would empty a pi content");
    level.erase(level.begin() + pos, level.begin() + pos + 2);
    return true;
  }

  if (const auto* ins = std::get_if<InsertPayload>(&s.payload)) {
    if (pos < 0 || pos > n) return fail(error, "insertion position out of range");
    if (n + 2 > ctx.max_len) return fail(error, "insertion exceeds length clamp");
    const Term& l = ins->left;
    const Term& r = ins->right;
    if (!same_symbol(l, r)) return fail(error, "inserted pair mismatched");
    bool ok = inv ? r.degree == l.degree + 1 : l.degree == r.degree + 1;
    if (!ok) return fail(error, "inserted pair has wrong orientation");
    if (std::max(std::abs(l.degree), std::abs(r.degree)) > ctx.max_degree) {
      return fail(error, "inserted degree exceeds clamp");
    }
    if (s.rule != insertion_tag(top, l.is_pi())) return fail(error, "rule tag mismatch");
    if (l.is_simple()) {
      if (!atom_allowed(ctx, l.atom)) return fail(error, "atom not in insertion alphabet");
    } else {
      if (!content_allowed(ctx, l.content)) return fail(error, "content not in insertion alphabet");
      if (ref.depth + 1 + pi_depth(l.content) > ctx.max_pi_depth) {
        return fail(error, "insertion exceeds pi depth clamp");
      }
    }
    level.insert(level.begin() + pos, {l, r});
    return true;
  }

  if (const auto* sub = std::get_if<SubstPayload>(&s.payload)) {
    if (s.rule != subst_tag(top)) return fail(error, "rule tag mismatch");
    if (pos < 0 || pos >= n) return fail(error, "position out of range");
    Term& t = level[pos];
    if (!t.is_simple() || t.atom != sub->from) return fail(error, "substitution source mismatch");
    if (!ctx.poset.has_atom(sub->from) || !ctx.poset.has_atom(sub->to)) {
      return fail(error, "substitution atom unknown to the order");
    }
    bool eff_odd = odd(t.degree) ^ inv;
    bool ok = eff_odd ? ctx.poset.leq(sub->to, sub->from) : ctx.poset.leq(sub->from, sub->to);
    if (!ok) return fail(error, "substitution not licensed by the order");
    t.atom = sub->to;
    return true;
  }

  if (const auto* mp = std::get_if<MindPayload>(&s.payload)) {
    if (s.rule != mind_tag(top)) return fail(error, "rule tag mismatch");
    if (pos < 0 || pos >= n) return fail(error, "position out of range");
    Term& t = level[pos];
    if (!mind_relation_ok(ctx, mp->atom, mp->inner)) {
      return fail(error, "conversion not licensed by the order");
    }
    if (mp->decorate) {
      if (!t.is_simple() || t.atom != mp->atom) return fail(error, "conversion source mismatch");
      if (!decorate_parity_ok(t.degree, inv, ctx.mind)) {
        return fail(error, "conversion parity not licensed");
      }
      if (ref.depth + 1 > ctx.max_pi_depth) return fail(error, "conversion exceeds pi depth clamp");
      t = Term::pi({Term::simple(mp->inner, 0)}, t.degree);
    } else {
      if (!t.is_pi() || t.content.size() != 1 || !t.content[0].is_simple() ||
          t.content[0].degree != 0 || t.content[0].atom != mp->inner) {
        return fail(error, "conversion source mismatch");
      }
      if (!undecorate_parity_ok(t.degree, inv, ctx.mind)) {
        return fail(error, "conversion parity not licensed");
      }
      t = Term::simple(mp->atom, t.degree);
    }
    return true;
  }

  if (const auto* sw = std::get_if<SwapPayload>(&s.payload)) {
    if (s.rule != swap_tag(top, sw->shift)) return fail(error, "rule tag mismatch");
    if (sw->shift != 2 && sw->shift != -2) return fail(error, "swap shift must be +-2");
    if (sw->len_a < 1 || sw->len_b < 1 || sw->len_a > ctx.max_block || sw->len_b > ctx.max_block) {
      return fail(error, "swap block length out of bounds");
    }
    int end = pos + sw->len_a + sw->len_b;
    if (pos < 0 || end > n) return fail(error, "swap blocks out of range");
    for (int i = pos; i < end; ++i) {
      if (!level[i].is_pi()) return fail(error, "swap blocks must be decorated terms");
    }
    if (!swap_allowed(sw->shift, inv, ctx.precyclic)) {
      return fail(error, "swap direction not licensed");
    }
    Word a(level.begin() + pos, level.begin() + pos + sw->len_a);
    Word b(level.begin() + pos + sw->len_a, level.begin() + end);
    Word moved = shift_block(sw->shift > 0 ? b : a, sw->shift);
    if (!degrees_ok(moved, ctx)) return fail(error, "swap exceeds degree clamp");
    Word replaced = sw->shift > 0 ? concat(moved, a) : concat(b, moved);
    std::copy(replaced.begin(), replaced.end(), level.begin() + pos);
    return true;
  }

  if (const auto* wp = std::get_if<WrapPayload>(&s.payload)) {
    if (!ctx.deep_pi) return fail(error, "run conversions are disabled");
    if (s.rule != mind_tag(top)) return fail(error, "rule tag mismatch");
    if (wp->wrap) {
      if (wp->len < 2 || pos < 0 || pos + wp->len > n) return fail(error, "run out of range");
      if (!decorate_parity_ok(wp->degree, inv, ctx.mind)) {
        return fail(error, "conversion parity not licensed");
      }
      if (ref.depth + 1 > ctx.max_pi_depth) return fail(error, "conversion exceeds pi depth clamp");
      Word content(level.begin() + pos, level.begin() + pos + wp->len);
      content = adjoint_power(content, -wp->degree);
      if (!degrees_ok(content, ctx) || ref.depth + 1 + pi_depth(content) > ctx.max_pi_depth) {
        return fail(error, "conversion exceeds clamps");
      }
      Term t = Term::pi(std::move(content), wp->degree);
      level.erase(level.begin() + pos, level.begin() + pos + wp->len);
      level.insert(level.begin() + pos, std::move(t));
    } else {
      if (pos < 0 || pos >= n) return fail(error, "position out of range");
      Term& t = level[pos];
      if (!t.is_pi() || static_cast<int>(t.content.size()) != wp->len || wp->len < 2 ||
          t.degree != wp->degree) {
        return fail(error, "conversion source mismatch");
      }
      if (!undecorate_parity_ok(t.degree, inv, ctx.mind)) {
        return fail(error, "conversion parity not licensed");
      }
      Word spliced = adjoint_power(t.content, t.degree);
      if (n - 1 + static_cast<int>(spliced.size()) > ctx.max_len || !degrees_ok(spliced, ctx)) {
        return fail(error, "conversion exceeds clamps");
      }
      level.erase(level.begin() + pos);
      level.insert(level.begin() + pos, spliced.begin(), spliced.end());
    }
    return true;
  }

  return fail(error, "unknown payload");
}

}  // namespace

std::optional<Word> try_apply(const Word& w, const Step& s, const RuleContext& ctx,
                              std::string* error) {
  Word out = w;
  LevelRef ref;
  if (!resolve(out, s.path, &ref, error)) return std::nullopt;
  bool top = s.path.empty();
  if (!apply_at(ref, s, top, ctx, error)) return std::nullopt;
  return out;
}

namespace {

struct PredEnumerator {
  const Word& root;
  const RuleContext& ctx;
  RuleSet fams;
  std::vector<std::pair<Word, Step>> out;
  std::vector<int> path;

  // Builds a copy of root whose level at `path` is replaced by `level`.
  Word rebuild(const Word& level) const {
    Word v = root;
    Word* cur = &v;
    for (int idx : path) cur = &(*cur)[idx].content;
    *cur = level;
    return v;
  }

  void emit(Word level, Step s) { out.emplace_back(rebuild(level), std::move(s)); }

  // Predecessors under deletion rules: v carries an extra deletable pair.
  void deletion_preds(const Word& level, bool top, bool inv, int depth) {
    bool want_simple = fams.has(deletion_tag(top, false));
    bool want_pi = fams.has(deletion_tag(top, true));
    if (!top) want_simple = want_pi = fams.has(RuleTag::IndC);
    if (!want_simple && !want_pi) return;
    int n = static_cast<int>(level.size());
    if (n + 2 > ctx.max_len) return;
    for (int pos = 0; pos <= n; ++pos) {
      if (want_simple) {
        for (const std::string& a : ctx.insert_atoms) {
          for (int m = -ctx.max_degree; m + 1 <= ctx.max_degree; ++m) {
            Term lo = Term::simple(a, m), hi = Term::simple(a, m + 1);
            Term left = inv ? hi : lo, right = inv ? lo : hi;  // deletable orientation
            Word v = level;
            v.insert(v.begin() + pos, {left, right});
            emit(std::move(v), {deletion_tag(top, false), path, pos, NoPayload{}});
          }
        }
      }
      if (want_pi) {
        for (const Word& c : ctx.insert_contents) {
          if (depth + 1 + pi_depth(c) > ctx.max_pi_depth) continue;
          if (!degrees_ok(c, ctx)) continue;
          for (int m = -ctx.max_degree; m + 1 <= ctx.max_degree; ++m) {
            Term lo = Term::pi(c, m), hi = Term::pi(c, m + 1);
            Term left = inv ? hi : lo, right = inv ? lo : hi;
            Word v = level;
            v.insert(v.begin() + pos, {left, right});
            emit(std::move(v), {deletion_tag(top, true), path, pos, NoPayload{}});
          }
        }
      }
    }
  }

  // Predecessors under insertion rules: v lacks an inserted pair of w.
  void insertion_preds(const Word& level, bool top, bool inv) {
    int n = static_cast<int>(level.size());
    for (int i = 0; i + 1 < n; ++i) {
      const Term& l = level[i];
      const Term& r = level[i + 1];
      if (!same_symbol(l, r)) continue;
      bool ok = inv ? r.degree == l.degree + 1 : l.degree == r.degree + 1;
      if (!ok) continue;
      RuleTag tag = insertion_tag(top, l.is_pi());
      if (!fams.has(tag)) continue;
      if (l.is_simple()) {
        if (!atom_allowed(ctx, l.atom)) continue;
      } else {
        if (!content_allowed(ctx, l.content)) continue;
      }
      if (std::max(std::abs(l.degree), std::abs(r.degree)) > ctx.max_degree) continue;
      if (!top && n - 2 < 1) continue;
      Word v = level;
      v.erase(v.begin() + i, v.begin() + i + 2);
      emit(std::move(v), {tag, path, i, InsertPayload{l, r}});
    }
  }

  void subst_preds(const Word& level, bool top, bool inv) {
    if (!fams.has(subst_tag(top))) return;
    for (int i = 0; i < static_cast<int>(level.size()); ++i) {
      const Term& t = level[i];
      if (!t.is_simple() || !ctx.poset.has_atom(t.atom)) continue;
      bool eff_odd = odd(t.degree) ^ inv;
      const auto& sources = eff_odd ? ctx.poset.upward(t.atom) : ctx.poset.downward(t.atom);
      for (const std::string& a : sources) {
        Word v = level;
        v[i].atom = a;
        emit(std::move(v), {subst_tag(top), path, i, SubstPayload{a, t.atom}});
      }
    }
  }

  void mind_preds(const Word& level, bool top, bool inv, int depth) {
    if (!fams.has(mind_tag(top))) return;
    for (int i = 0; i < static_cast<int>(level.size()); ++i) {
      const Term& t = level[i];
      if (t.is_pi() && t.content.size() == 1 && t.content[0].is_simple() &&
          t.content[0].degree == 0) {
        // v had a simple term that was decorated.
        if (decorate_parity_ok(t.degree, inv, ctx.mind) && depth + 1 <= ctx.max_pi_depth) {
          const std::string& b = t.content[0].atom;
          std::vector<std::string> sources;
          if (ctx.ordered_mind && ctx.poset.has_atom(b)) {
            sources = ctx.poset.downward(b);
          } else {
            sources = {b};
          }
          for (const std::string& a : sources) {
            Word v = level;
            v[i] = Term::simple(a, t.degree);
            emit(std::move(v), {mind_tag(top), path, i, MindPayload{true, a, b}});
          }
        }
      }
      if (t.is_simple()) {
        // v had a decorated term that was un-decorated; v itself must fit
        // the nesting clamp for the search universe to stay closed
        if (undecorate_parity_ok(t.degree, inv, ctx.mind) && depth + 1 <= ctx.max_pi_depth) {
          std::vector<std::string> inners;
          if (ctx.ordered_mind && ctx.poset.has_atom(t.atom)) {
            inners = ctx.poset.upward(t.atom);
          } else {
            inners = {t.atom};
          }
          for (const std::string& b : inners) {
            Word v = level;
            v[i] = Term::pi({Term::simple(b, 0)}, t.degree);
            emit(std::move(v), {mind_tag(top), path, i, MindPayload{false, t.atom, b}});
          }
        }
      }
    }
  }

  void swap_preds(const Word& level, bool top, bool inv) {
    if (ctx.precyclic == Precyclic::None) return;
    int n = static_cast<int>(level.size());
    for (int i = 0; i < n; ++i) {
      if (!level[i].is_pi()) continue;
      for (int lc = 1; lc <= ctx.max_block && i + lc <= n; ++lc) {
        if (!level[i + lc - 1].is_pi()) break;
        for (int ld = 1; ld <= ctx.max_block && i + lc + ld <= n; ++ld) {
          if (!level[i + lc + ld - 1].is_pi()) break;
          Word c(level.begin() + i, level.begin() + i + lc);
          Word d(level.begin() + i + lc, level.begin() + i + lc + ld);
          for (int shift : {2, -2}) {
            RuleTag tag = swap_tag(top, shift);
            if (!fams.has(tag)) continue;
            if (!swap_allowed(shift, inv, ctx.precyclic)) continue;
            // Raising swap produced (shift(B), A); lowering produced (B, shift(A)).
            Word restored = shift_block(shift > 0 ? c : d, -shift);
            if (!degrees_ok(restored, ctx)) continue;
            Word v = level;
            Word pre = shift > 0 ? concat(d, restored) : concat(restored, c);
            std::copy(pre.begin(), pre.end(), v.begin() + i);
            int la = shift > 0 ? ld : static_cast<int>(restored.size());
            int lb = shift > 0 ? static_cast<int>(restored.size()) : lc;
            emit(std::move(v), {tag, path, i, SwapPayload{la, lb, shift}});
          }
        }
      }
    }
  }

  void wrap_preds(const Word& level, bool top, bool inv, int depth) {
    if (!ctx.deep_pi || !fams.has(mind_tag(top))) return;
    int n = static_cast<int>(level.size());
    for (int i = 0; i < n; ++i) {
      const Term& t = level[i];
      if (t.is_pi() && t.content.size() >= 2 &&
          decorate_parity_ok(t.degree, inv, ctx.mind) && depth + 1 <= ctx.max_pi_depth) {
        // v had the run spelled out; wrapping produced t.
        Word run = adjoint_power(t.content, t.degree);
        if (n - 1 + static_cast<int>(run.size()) <= ctx.max_len && degrees_ok(run, ctx)) {
          Word v = level;
          v.erase(v.begin() + i);
          v.insert(v.begin() + i, run.begin(), run.end());
          emit(std::move(v),
               {mind_tag(top), path, i,
                WrapPayload{true, static_cast<int>(run.size()), t.degree}});
        }
      }
    }
    // v had a decorated run that was unwrapped into a slice of w.
    for (int i = 0; i < n; ++i) {
      for (int len = 2; i + len <= n; ++len) {
        for (int k = -ctx.max_degree; k <= ctx.max_degree; ++k) {
          if (!undecorate_parity_ok(k, inv, ctx.mind)) continue;
          Word slice(level.begin() + i, level.begin() + i + len);
          Word content = adjoint_power(slice, -k);
          if (!degrees_ok(content, ctx)) continue;
          if (depth + 1 + pi_depth(content) > ctx.max_pi_depth) continue;
          Word v = level;
          v.erase(v.begin() + i, v.begin() + i + len);
          v.insert(v.begin() + i, Term::pi(content, k));
          emit(std::move(v), {mind_tag(top), path, i, WrapPayload{false, len, k}});
        }
      }
    }
  }

  void walk(const Word& level, bool inv, int depth) {
    bool top = path.empty();
    deletion_preds(level, top, inv, depth);
    insertion_preds(level, top, inv);
    subst_preds(level, top, inv);
    mind_preds(level, top, inv, depth);
    wrap_preds(level, top, inv, depth);
    swap_preds(level, top, inv);
    for (int i = 0; i < static_cast<int>(level.size()); ++i) {
      if (!level[i].is_pi()) continue;
      path.push_back(i);
      walk(level[i].content, inv ^ odd(level[i].degree), depth + 1);
      path.pop_back();
    }
  }
};

}  // namespace

std::vector<std::pair<Word, Step>> enumerate_predecessors(const Word& w, RuleSet families,
                                                          const RuleContext& ctx) {
  PredEnumerator e{w, ctx, families};
  e.walk(w, false, 0);
  std::sort(e.out.begin(), e.out.end(), [](const auto& x, const auto& y) {
    if (step_less(x.second, y.second)) return true;
    if (step_less(y.second, x.second)) return false;
    return render(x.first) < render(y.first);
  });
  e.out.erase(std::unique(e.out.begin(), e.out.end(),
                          [](const auto& x, const auto& y) {
                            return x.second == y.second && x.first == y.first;
                          }),
              e.out.end());
  return std::move(e.out);
}

}  // namespace pregroup
