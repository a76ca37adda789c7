#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "pregroup/parse.hpp"
#include "pregroup/rules.hpp"

using namespace pregroup;

namespace {

RuleContext plain_ctx() {
  RuleContext ctx;
  ctx.poset = Poset({"a", "b", "n", "p", "q", "s"}, {{"n", "p"}});
  ctx.insert_atoms = {"a", "b", "n", "p", "q", "s"};
  ctx.insert_contents = {};
  ctx.max_degree = 4;
  ctx.max_len = 8;
  ctx.max_pi_depth = 1;
  return ctx;
}

std::vector<Step> steps_of(const Word& w, RuleSet fams, const RuleContext& ctx) {
  return enumerate_steps(w, fams, ctx);
}

bool has_step(const std::vector<Step>& steps, const Step& s) {
  return std::find(steps.begin(), steps.end(), s) != steps.end();
}

}  // namespace

TEST_CASE("rule names round trip") {
  const char* names[] = {"CON",  "PI_CON", "IND_C", "EXP", "PI_EXP", "IND_E",
                         "IND",  "PI_IND", "M_IND", "PRE", "R_PRE"};
  for (int i = 0; i < kRuleCount; ++i) {
    RuleTag t = static_cast<RuleTag>(i);
    CHECK(rule_name(t) == std::string(names[i]));
    CHECK(rule_from_name(names[i]) == t);
  }
  CHECK_FALSE(rule_from_name("NOPE").has_value());
}

TEST_CASE("family predicates") {
  CHECK(is_contraction(RuleTag::Con));
  CHECK(is_contraction(RuleTag::PiCon));
  CHECK(is_contraction(RuleTag::IndC));
  CHECK(is_expansion(RuleTag::Exp));
  CHECK(is_expansion(RuleTag::PiExp));
  CHECK(is_expansion(RuleTag::IndE));
  for (RuleTag t : {RuleTag::Ind, RuleTag::PiInd, RuleTag::MInd, RuleTag::Pre, RuleTag::RPre}) {
    CHECK(is_special(t));
    CHECK_FALSE(is_contraction(t));
    CHECK_FALSE(is_expansion(t));
  }
}

TEST_CASE("contraction deletes ascending pairs only") {
  RuleContext ctx = plain_ctx();
  Word w = parse_word("a a^r a^r a");
  auto steps = steps_of(w, RuleSet::contractions(), ctx);
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].rule == RuleTag::Con);
  CHECK(steps[0].position == 0);
  CHECK(render(*try_apply(w, steps[0], ctx)) == "a^r a");

  // descending pair at 1-2 and same-degree pair are not deletable
  CHECK(steps_of(parse_word("a^r a^r"), RuleSet::contractions(), ctx).empty());
  CHECK(steps_of(parse_word("a b^r"), RuleSet::contractions(), ctx).empty());
}

TEST_CASE("decorated contraction needs equal contents") {
  RuleContext ctx = plain_ctx();
  auto steps = steps_of(parse_word("pi(a b) pi(a b)^r"), RuleSet::contractions(), ctx);
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].rule == RuleTag::PiCon);
  CHECK(steps_of(parse_word("pi(a) pi(b)^r"), RuleSet::contractions(), ctx).empty());
}

TEST_CASE("expansion inserts descending pairs at every gap") {
  RuleContext ctx = plain_ctx();
  ctx.insert_atoms = {"a"};
  ctx.max_degree = 1;
  Word w = parse_word("b");
  auto steps = steps_of(w, RuleSet::expansions(), ctx);
  // gaps {0,1} x degrees {(0,-1),(1,0)} wait: m in [-1,0] -> pairs (a^l a? no:
  // lo=a^(m), hi=a^(m+1); inserted (hi, lo): m=-1 -> (a, a^l); m=0 -> (a^r, a)
  REQUIRE(steps.size() == 4);
  std::set<std::string> results;
  for (const Step& s : steps) {
    CHECK(s.rule == RuleTag::Exp);
    results.insert(render(*try_apply(w, s, ctx)));
  }
  CHECK(results == std::set<std::string>{"a a^l b", "a^r a b", "b a a^l", "b a^r a"});
}

TEST_CASE("insertion respects the length clamp") {
  RuleContext ctx = plain_ctx();
  ctx.max_len = 3;
  CHECK(steps_of(parse_word("a"), RuleSet::expansions(), ctx).empty() == false);
  CHECK(steps_of(parse_word("a b"), RuleSet::expansions(), ctx).empty());
}

TEST_CASE("induced steps follow the order covariantly at even degrees") {
  RuleContext ctx = plain_ctx();
  Word w = parse_word("n n^r");
  auto steps = steps_of(w, RuleSet::of({RuleTag::Ind}), ctx);
  // even degree: n -> {n, p}; odd degree: n^r -> downward(n) = {n}
  Step up{RuleTag::Ind, {}, 0, SubstPayload{"n", "p"}};
  CHECK(has_step(steps, up));
  CHECK(render(*try_apply(w, up, ctx)) == "p n^r");
  CHECK_FALSE(has_step(steps, Step{RuleTag::Ind, {}, 1, SubstPayload{"n", "p"}}));

  Word v = parse_word("p^r");
  auto vsteps = steps_of(v, RuleSet::of({RuleTag::Ind}), ctx);
  Step down{RuleTag::Ind, {}, 0, SubstPayload{"p", "n"}};
  CHECK(has_step(vsteps, down));
  CHECK(render(*try_apply(v, down, ctx)) == "n^r");
}

TEST_CASE("induced steps inside decorations flip with wrapper parity") {
  RuleContext ctx = plain_ctx();
  // even wrapper: content behaves as written
  Word even = parse_word("pi(n)");
  CHECK(has_step(steps_of(even, RuleSet::of({RuleTag::PiInd}), ctx),
                 Step{RuleTag::PiInd, {0}, 0, SubstPayload{"n", "p"}}));
  // odd wrapper inverts: the content atom moves down the order
  Word odds = parse_word("pi(n)^r");
  auto steps = steps_of(odds, RuleSet::of({RuleTag::PiInd}), ctx);
  CHECK_FALSE(has_step(steps, Step{RuleTag::PiInd, {0}, 0, SubstPayload{"n", "p"}}));
  Word podd = parse_word("pi(p)^r");
  CHECK(has_step(steps_of(podd, RuleSet::of({RuleTag::PiInd}), ctx),
                 Step{RuleTag::PiInd, {0}, 0, SubstPayload{"p", "n"}}));
}

TEST_CASE("mixed conversions are parity directed") {
  RuleContext ctx = plain_ctx();
  // decorate at even degree
  Word w = parse_word("a");
  Step dec{RuleTag::MInd, {}, 0, MindPayload{true, "a", "a"}};
  CHECK(has_step(steps_of(w, RuleSet::of({RuleTag::MInd}), ctx), dec));
  CHECK(render(*try_apply(w, dec, ctx)) == "pi(a)");
  // not at odd degree
  CHECK(steps_of(parse_word("a^r"), RuleSet::of({RuleTag::MInd}), ctx).empty());
  // undecorate at odd degree
  Word v = parse_word("pi(a)^l");
  Step und{RuleTag::MInd, {}, 0, MindPayload{false, "a", "a"}};
  CHECK(has_step(steps_of(v, RuleSet::of({RuleTag::MInd}), ctx), und));
  CHECK(render(*try_apply(v, und, ctx)) == "a^l");
  // not at even degree
  CHECK(steps_of(parse_word("pi(a)"), RuleSet::of({RuleTag::MInd}), ctx).empty());
  // undecorate needs a single degree-zero simple content
  CHECK(steps_of(parse_word("pi(a b)^r"), RuleSet::of({RuleTag::MInd}), ctx).empty());
  CHECK(steps_of(parse_word("pi(a^r)^r"), RuleSet::of({RuleTag::MInd}), ctx).empty());
}

TEST_CASE("symmetric conversions drop the parity gate") {
  RuleContext ctx = plain_ctx();
  ctx.mind = MindMode::Symmetric;
  CHECK_FALSE(steps_of(parse_word("a^r"), RuleSet::of({RuleTag::MInd}), ctx).empty());
  CHECK_FALSE(steps_of(parse_word("pi(a)"), RuleSet::of({RuleTag::MInd}), ctx).empty());
}

TEST_CASE("swaps move decorated blocks with a degree shift") {
  RuleContext ctx = plain_ctx();
  ctx.precyclic = Precyclic::Left;
  Word w = parse_word("pi(q) pi(p)^l");
  Step pre{RuleTag::Pre, {}, 0, SwapPayload{1, 1, 2}};
  auto steps = steps_of(w, RuleSet::of({RuleTag::Pre, RuleTag::RPre}), ctx);
  REQUIRE(has_step(steps, pre));
  CHECK(render(*try_apply(w, pre, ctx)) == "pi(p)^r pi(q)");
  // right swaps unlicensed under left precyclicity
  for (const Step& s : steps) CHECK(s.rule == RuleTag::Pre);

  ctx.precyclic = Precyclic::Right;
  Word v = parse_word("pi(q)^r pi(p)");
  Step rpre{RuleTag::RPre, {}, 0, SwapPayload{1, 1, -2}};
  auto vsteps = steps_of(v, RuleSet::of({RuleTag::Pre, RuleTag::RPre}), ctx);
  REQUIRE(has_step(vsteps, rpre));
  CHECK(render(*try_apply(v, rpre, ctx)) == "pi(p) pi(q)^l");
}

TEST_CASE("swaps require decorated blocks and respect clamps") {
  RuleContext ctx = plain_ctx();
  ctx.precyclic = Precyclic::Both;
  // undecorated neighbors block the swap
  CHECK(steps_of(parse_word("pi(q) p^l"), RuleSet::of({RuleTag::Pre, RuleTag::RPre}), ctx)
            .empty());
  // block length clamp
  ctx.max_block = 1;
  Word w = parse_word("pi(a) pi(b) pi(q)");
  for (const Step& s : steps_of(w, RuleSet::of({RuleTag::Pre, RuleTag::RPre}), ctx)) {
    const auto& p = std::get<SwapPayload>(s.payload);
    CHECK(p.len_a == 1);
    CHECK(p.len_b == 1);
  }
  // degree clamp: shifting past max_degree is not licensed
  ctx.max_block = 2;
  ctx.max_degree = 2;
  Word h = parse_word("pi(a) pi(b)^r");
  Step over{RuleTag::Pre, {}, 0, SwapPayload{1, 1, 2}};
  CHECK_FALSE(has_step(steps_of(h, RuleSet::of({RuleTag::Pre, RuleTag::RPre}), ctx), over));
}

TEST_CASE("nested swaps carry the PI_IND tag") {
  RuleContext ctx = plain_ctx();
  ctx.precyclic = Precyclic::Left;
  ctx.max_pi_depth = 2;
  Word w = parse_word("pi(pi(q) pi(p)^l)");
  Step s{RuleTag::PiInd, {0}, 0, SwapPayload{1, 1, 2}};
  CHECK(has_step(steps_of(w, RuleSet::of({RuleTag::PiInd}), ctx), s));
  CHECK(render(*try_apply(w, s, ctx)) == "pi(pi(p)^r pi(q))");
  // odd wrapper inverts the licensed direction
  Word odd = parse_word("pi(pi(q)^r pi(p))^r");
  Step sr{RuleTag::PiInd, {0}, 0, SwapPayload{1, 1, -2}};
  CHECK(has_step(steps_of(odd, RuleSet::of({RuleTag::PiInd}), ctx), sr));
}

TEST_CASE("deletion inside decorations keeps contents non-empty") {
  RuleContext ctx = plain_ctx();
  ctx.max_pi_depth = 2;
  Word w = parse_word("pi(a a^r b)");
  Step ok{RuleTag::IndC, {0}, 0, NoPayload{}};
  CHECK(has_step(steps_of(w, RuleSet::contractions(), ctx), ok));
  CHECK(render(*try_apply(w, ok, ctx)) == "pi(b)");
  // deleting the only pair would empty the content
  CHECK(steps_of(parse_word("pi(a a^r)"), RuleSet::contractions(), ctx).empty());
}

TEST_CASE("deletion orientation flips under odd wrappers") {
  RuleContext ctx = plain_ctx();
  // pi(...)^r inverts: descending pairs delete inside
  Word w = parse_word("pi(a^r a b)^r");
  Step s{RuleTag::IndC, {0}, 0, NoPayload{}};
  CHECK(has_step(steps_of(w, RuleSet::contractions(), ctx), s));
  CHECK(render(*try_apply(w, s, ctx)) == "pi(b)^r");
  // ascending does not
  CHECK(steps_of(parse_word("pi(a a^r b)^r"), RuleSet::contractions(), ctx).empty());
}

TEST_CASE("enumerate_steps is sorted and duplicate free") {
  RuleContext ctx = plain_ctx();
  ctx.precyclic = Precyclic::Both;
  ctx.insert_contents = {parse_word("a"), parse_word("q")};
  for (const char* text : {"a a^r pi(q) pi(a)^l", "pi(n) n n^r", "pi(a b)^r pi(q)"}) {
    Word w = parse_word(text);
    auto steps = steps_of(w, RuleSet::all(), ctx);
    for (size_t i = 0; i + 1 < steps.size(); ++i) {
      CHECK(step_less(steps[i], steps[i + 1]));
    }
  }
}

TEST_CASE("try_apply reports licensing failures") {
  RuleContext ctx = plain_ctx();
  std::string err;
  Word w = parse_word("a b^r");
  CHECK_FALSE(try_apply(w, Step{RuleTag::Con, {}, 0, NoPayload{}}, ctx, &err).has_value());
  CHECK(err == "pair is not deletable");
  CHECK_FALSE(try_apply(w, Step{RuleTag::Con, {}, 7, NoPayload{}}, ctx, &err).has_value());
  CHECK_FALSE(
      try_apply(w, Step{RuleTag::Ind, {}, 0, SubstPayload{"a", "q"}}, ctx, &err).has_value());
  CHECK(err == "substitution not licensed by the order");
  CHECK_FALSE(
      try_apply(w, Step{RuleTag::PiInd, {0}, 0, SubstPayload{"a", "a"}}, ctx, &err).has_value());
  // tag and site must agree
  Word d = parse_word("a a^r");
  CHECK_FALSE(try_apply(d, Step{RuleTag::PiCon, {}, 0, NoPayload{}}, ctx, &err).has_value());
  CHECK(err == "rule tag mismatch");
}

TEST_CASE("predecessors invert successors") {
  RuleContext ctx = plain_ctx();
  ctx.precyclic = Precyclic::Both;
  ctx.insert_contents = {parse_word("a"), parse_word("q")};
  ctx.max_len = 6;
  ctx.max_degree = 3;
  const char* samples[] = {"a",          "a a^r",          "pi(q) pi(a)^l", "pi(n) n n^r b",
                           "pi(a b)^r",  "n pi(p)^r pi(s)", "q^r pi(q) a^l", "1"};
  for (const char* text : samples) {
    Word w = parse_word(text);
    for (RuleSet fams : {RuleSet::contractions(), RuleSet::expansions(), RuleSet::specials()}) {
      // every predecessor applies forward onto w
      for (const auto& [v, s] : enumerate_predecessors(w, fams, ctx)) {
        auto applied = try_apply(v, s, ctx);
        REQUIRE_MESSAGE(applied.has_value(), render(v), " -[", render(s), "]-> ", render(w));
        CHECK(render(*applied) == render(w));
      }
      // every successor of w lists w among its predecessors
      for (const Step& s : enumerate_steps(w, fams, ctx)) {
        auto u = try_apply(w, s, ctx);
        REQUIRE(u.has_value());
        bool found = false;
        for (const auto& [v, ps] : enumerate_predecessors(*u, fams, ctx)) {
          if (render(v) == render(w) && ps == s) found = true;
        }
        CHECK_MESSAGE(found, render(w), " -[", render(s), "]-> ", render(*u));
      }
    }
  }
}

TEST_CASE("step render is stable") {
  CHECK(render(Step{RuleTag::Con, {}, 0, NoPayload{}}) == "CON path=[] pos=0 {}");
  CHECK(render(Step{RuleTag::Ind, {}, 2, SubstPayload{"n", "p"}}) == "IND path=[] pos=2 {n->p}");
  CHECK(render(Step{RuleTag::PiInd, {1, 0}, 3, SwapPayload{1, 2, -2}}) ==
        "PI_IND path=[1,0] pos=3 {a:1 b:2 shift:-2}");
  CHECK(render(Step{RuleTag::MInd, {}, 0, MindPayload{true, "a", "a"}}) ==
        "M_IND path=[] pos=0 {decorate a~a}");
}
