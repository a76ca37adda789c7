#include "pregroup/engine.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <future>
#include <set>
#include <thread>

namespace pregroup {

const char* status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Derivable: return "derivable";
    case SearchStatus::NotDerivable: return "not_derivable";
    case SearchStatus::Unknown: return "unknown";
  }
  return "unknown";
}

bool is_normal(const Derivation& d) {
  bool seen_expansion = false;
  for (const Step& s : d.steps) {
    if (is_expansion(s.rule)) seen_expansion = true;
    if (seen_expansion && is_contraction(s.rule)) return false;
  }
  return true;
}

namespace {

using Edges = std::vector<std::pair<Word, Step>>;
using Expand = std::function<Edges(const Word&)>;

// Level-synchronised BFS.  Sequential and parallel runs visit words in the
// same order: per level, nodes are expanded in discovery order and their
// edges merged in that order.
Closure closure_search(const Word& start, int max_steps, long long max_visited, bool parallel,
                       const Expand& expand, const std::set<std::string>* targets, int* found) {
  Closure c;
  c.complete = true;
  if (found) *found = -1;
  c.words.push_back(start);
  c.index.emplace(render(start), 0);
  c.dist.push_back(0);
  c.parent.push_back(-1);
  c.parent_step.push_back(Step{});
  if (targets && targets->count(render(start))) {
    if (found) *found = 0;
    c.complete = false;
    return c;
  }

  size_t head = 0;
  while (head < c.words.size()) {
    size_t tail = c.words.size();
    int d = c.dist[head];
    std::vector<size_t> level;
    for (size_t i = head; i < tail && c.dist[i] == d; ++i) level.push_back(i);
    head += level.size();

    std::vector<Edges> edges(level.size());
    if (parallel && level.size() > 1) {
      std::atomic<size_t> next{0};
      unsigned n = std::thread::hardware_concurrency();
      size_t workers = std::min<size_t>(level.size(), n ? n : 4);
      std::vector<std::future<void>> tasks;
      tasks.reserve(workers);
      for (size_t t = 0; t < workers; ++t) {
        tasks.push_back(std::async(std::launch::async, [&] {
          for (size_t i = next.fetch_add(1); i < level.size(); i = next.fetch_add(1)) {
            edges[i] = expand(c.words[level[i]]);
          }
        }));
      }
      for (auto& t : tasks) t.get();
    } else {
      for (size_t i = 0; i < level.size(); ++i) edges[i] = expand(c.words[level[i]]);
    }

    for (size_t li = 0; li < level.size(); ++li) {
      for (auto& [v, s] : edges[li]) {
        std::string key = render(v);
        if (c.index.count(key)) continue;
        if (d + 1 > max_steps) {
          c.complete = false;
          continue;
        }
        if (static_cast<long long>(c.words.size()) >= max_visited) {
          c.complete = false;
          return c;
        }
        c.index.emplace(key, static_cast<int>(c.words.size()));
        c.words.push_back(std::move(v));
        c.dist.push_back(d + 1);
        c.parent.push_back(static_cast<int>(level[li]));
        c.parent_step.push_back(s);
        if (targets && targets->count(key)) {
          if (found) *found = static_cast<int>(c.words.size()) - 1;
          c.complete = false;
          return c;
        }
      }
    }
  }
  return c;
}

Expand forward_expand(RuleSet families, const RuleContext& ctx) {
  return [families, &ctx](const Word& w) {
    Edges out;
    for (const Step& s : enumerate_steps(w, families, ctx)) {
      std::optional<Word> v = try_apply(w, s, ctx);
      if (v) out.emplace_back(std::move(*v), s);
    }
    return out;
  };
}

Expand backward_expand(RuleSet families, const RuleContext& ctx) {
  return [families, &ctx](const Word& w) { return enumerate_predecessors(w, families, ctx); };
}

Derivation path_from(const Closure& c, int idx) {
  Derivation d;
  std::vector<int> chain;
  for (int i = idx; i != -1; i = c.parent[i]) chain.push_back(i);
  std::reverse(chain.begin(), chain.end());
  d.start = c.words[chain.front()];
  for (size_t i = 1; i < chain.size(); ++i) {
    d.steps.push_back(c.parent_step[chain[i]]);
    d.words.push_back(c.words[chain[i]]);
  }
  return d;
}

void collect_atoms(const Word& w, std::set<std::string>& out) {
  for (const Term& t : w) {
    if (t.is_simple()) {
      out.insert(t.atom);
    } else {
      collect_atoms(t.content, out);
    }
  }
}

void collect_contents(const Word& w, std::vector<Word>& out) {
  for (const Term& t : w) {
    if (t.is_pi()) {
      out.push_back(t.content);
      collect_contents(t.content, out);
    }
  }
}

int max_level_len(const Word& w) {
  int best = top_length(w);
  for (const Term& t : w) {
    if (t.is_pi()) best = std::max(best, max_level_len(t.content));
  }
  return best;
}

void sort_contents(std::vector<Word>& contents) {
  std::sort(contents.begin(), contents.end(),
            [](const Word& a, const Word& b) { return render(a) < render(b); });
  contents.erase(std::unique(contents.begin(), contents.end()), contents.end());
}

}  // namespace

Closure forward_closure(const Word& start, RuleSet families, const RuleContext& ctx,
                        int max_steps, long long max_visited, bool parallel) {
  return closure_search(start, max_steps, max_visited, parallel,
                        forward_expand(families, ctx), nullptr, nullptr);
}

Closure backward_closure(const Word& target, RuleSet families, const RuleContext& ctx,
                         int max_steps, long long max_visited, bool parallel) {
  return closure_search(target, max_steps, max_visited, parallel,
                        backward_expand(families, ctx), nullptr, nullptr);
}

RuleContext make_context(const std::vector<std::string>& atoms,
                         const std::vector<std::pair<std::string, std::string>>& order_pairs,
                         Precyclic precyclic, MindMode mind, const Budget& budget,
                         const std::vector<Word>& words) {
  std::set<std::string> atom_set(atoms.begin(), atoms.end());
  for (const Word& w : words) collect_atoms(w, atom_set);

  RuleContext ctx;
  ctx.poset = Poset(std::vector<std::string>(atom_set.begin(), atom_set.end()), order_pairs);
  ctx.precyclic = precyclic;
  ctx.mind = mind;
  ctx.insert_atoms.assign(atom_set.begin(), atom_set.end());
  for (const std::string& a : ctx.insert_atoms) ctx.insert_contents.push_back({Term::simple(a)});
  for (const Word& w : words) collect_contents(w, ctx.insert_contents);
  sort_contents(ctx.insert_contents);

  int deg = 0, len = 0, depth = 0;
  for (const Word& w : words) {
    deg = std::max(deg, max_abs_degree(w));
    len = std::max(len, max_level_len(w));
    depth = std::max(depth, pi_depth(w));
  }
  ctx.max_degree = budget.max_degree >= 0 ? budget.max_degree : deg + 4;
  ctx.max_len = budget.max_len >= 0 ? budget.max_len : len + 4;
  ctx.max_pi_depth = budget.max_pi_depth >= 0 ? budget.max_pi_depth : std::max(1, depth);
  return ctx;
}

SearchResult reduce_to(const Word& w, const std::vector<Word>& targets, const RuleContext& ctx,
                       const Budget& budget) {
  std::set<std::string> keys;
  for (const Word& t : targets) keys.insert(render(t));
  int found = -1;
  RuleSet fams = RuleSet::contractions() | RuleSet::specials();
  Closure c = closure_search(w, budget.max_steps, budget.max_visited, budget.parallel,
                             forward_expand(fams, ctx), &keys, &found);
  SearchResult r;
  r.visited = static_cast<long long>(c.words.size());
  r.exhausted = c.complete;
  if (found >= 0) {
    r.status = SearchStatus::Derivable;
    r.derivation = path_from(c, found);
  } else {
    r.status = c.complete ? SearchStatus::NotDerivable : SearchStatus::Unknown;
  }
  return r;
}

SearchResult nullable(const Word& w, const RuleContext& ctx, const Budget& budget) {
  return reduce_to(w, {Word{}}, ctx, budget);
}

SearchResult derive(const Word& x, const Word& y, const RuleContext& ctx, const Budget& budget) {
  RuleSet down = RuleSet::contractions() | RuleSet::specials();
  RuleSet up = RuleSet::expansions() | RuleSet::specials();
  long long cap = std::max<long long>(1, budget.max_visited / 2);
  Closure fwd = forward_closure(x, down, ctx, budget.max_steps, cap, budget.parallel);
  Closure bwd = backward_closure(y, up, ctx, budget.max_steps, cap, budget.parallel);

  SearchResult r;
  r.visited = static_cast<long long>(fwd.words.size() + bwd.words.size());
  r.exhausted = fwd.complete && bwd.complete;

  // Best meeting point: least total length, then least prefix, then first
  // discovered on the forward side.
  int best = -1, best_total = 0;
  for (int i = 0; i < static_cast<int>(fwd.words.size()); ++i) {
    auto it = bwd.index.find(render(fwd.words[i]));
    if (it == bwd.index.end()) continue;
    int total = fwd.dist[i] + bwd.dist[it->second];
    if (best < 0 || total < best_total ||
        (total == best_total && fwd.dist[i] < fwd.dist[best])) {
      best = i;
      best_total = total;
    }
  }

  if (best < 0) {
    r.status = r.exhausted ? SearchStatus::NotDerivable : SearchStatus::Unknown;
    return r;
  }
  if (best_total > budget.max_steps) {
    r.status = SearchStatus::Unknown;
    return r;
  }

  Derivation d = path_from(fwd, best);
  Word u = fwd.words[best];
  int remaining = best_total - fwd.dist[best];
  while (remaining > 0) {
    bool advanced = false;
    for (const Step& s : enumerate_steps(u, up, ctx)) {
      std::optional<Word> v = try_apply(u, s, ctx);
      if (!v) continue;
      auto it = bwd.index.find(render(*v));
      if (it == bwd.index.end() || bwd.dist[it->second] != remaining - 1) continue;
      d.steps.push_back(s);
      d.words.push_back(*v);
      u = std::move(*v);
      remaining -= 1;
      advanced = true;
      break;
    }
    if (!advanced) {
      // Only possible when the backward closure was truncated.
      r.status = SearchStatus::Unknown;
      return r;
    }
  }

  r.status = SearchStatus::Derivable;
  r.derivation = std::move(d);
  return r;
}

ValidationReport validate(const Derivation& d, const RuleContext& ctx) {
  RuleContext actx = ctx;
  std::set<std::string> atom_set(actx.insert_atoms.begin(), actx.insert_atoms.end());
  int deg = actx.max_degree, len = actx.max_len, depth = actx.max_pi_depth;
  auto widen = [&](const Word& w) {
    collect_atoms(w, atom_set);
    collect_contents(w, actx.insert_contents);
    deg = std::max(deg, max_abs_degree(w));
    len = std::max(len, max_level_len(w));
    depth = std::max(depth, pi_depth(w));
  };
  widen(d.start);
  for (const Word& w : d.words) widen(w);
  actx.insert_atoms.assign(atom_set.begin(), atom_set.end());
  for (const std::string& a : actx.insert_atoms) actx.insert_contents.push_back({Term::simple(a)});
  sort_contents(actx.insert_contents);
  actx.max_degree = deg;
  actx.max_len = len;
  actx.max_pi_depth = depth;

  ValidationReport rep;
  rep.normal = is_normal(d);
  if (d.words.size() != d.steps.size()) {
    rep.ok = false;
    rep.first_invalid = 0;
    rep.message = "words and steps differ in length";
    return rep;
  }
  const Word* cur = &d.start;
  for (size_t i = 0; i < d.steps.size(); ++i) {
    const Step& s = d.steps[i];
    std::string err;
    std::optional<Word> v = try_apply(*cur, s, actx, &err);
    if (!v) {
      rep.ok = false;
      rep.first_invalid = static_cast<int>(i);
      rep.message = err;
      return rep;
    }
    if (!(*v == d.words[i])) {
      rep.ok = false;
      rep.first_invalid = static_cast<int>(i);
      rep.message = "recorded word does not match the step result";
      return rep;
    }
    std::vector<Step> canon = enumerate_steps(*cur, RuleSet::of({s.rule}), actx);
    if (std::find(canon.begin(), canon.end(), s) == canon.end()) {
      rep.ok = false;
      rep.first_invalid = static_cast<int>(i);
      rep.message = "step is not canonically enumerable";
      return rep;
    }
    cur = &d.words[i];
  }
  return rep;
}

std::vector<std::string> fused_rule_labels(const Derivation& d) {
  std::vector<std::string> out;
  for (size_t i = 0; i < d.steps.size(); ++i) {
    const Step& s = d.steps[i];
    if (s.rule == RuleTag::MInd && i + 1 < d.steps.size()) {
      const Step& n = d.steps[i + 1];
      if ((n.rule == RuleTag::Con || n.rule == RuleTag::PiCon) && n.path == s.path &&
          (n.position == s.position || n.position + 1 == s.position)) {
        out.push_back("M_CON");
        ++i;
        continue;
      }
    }
    out.push_back(rule_name(s.rule));
  }
  return out;
}

}  // namespace pregroup
