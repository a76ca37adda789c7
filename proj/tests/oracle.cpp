#include "oracle.hpp"

#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace oracle {
namespace {

using pregroup::MindMode;
using pregroup::Poset;
using pregroup::Precyclic;
using pregroup::RuleContext;
using pregroup::Term;
using pregroup::Word;

bool odd(int d) { return d % 2 != 0; }

bool eq_symbol(const Term& a, const Term& b) {
  if (a.kind != b.kind) return false;
  return a.is_simple() ? a.atom == b.atom : a.content == b.content;
}

using Emit = std::function<void(Word)>;

// Splice-based generation at one nesting level.  emit receives a full
// replacement for the level; the caller stitches it into the root word.
struct Gen {
  const RuleContext& ctx;
  bool del, ins, spec;

  void level(const Word& w, bool inv, int depth, const Emit& emit) const {
    int n = static_cast<int>(w.size());
    int floor = depth == 0 ? 0 : 1;

    if (del && n - 2 >= floor) {
      for (int i = 0; i + 1 < n; ++i) {
        bool ok = eq_symbol(w[i], w[i + 1]) &&
                  (inv ? w[i].degree == w[i + 1].degree + 1
                       : w[i + 1].degree == w[i].degree + 1);
        if (!ok) continue;
        Word v(w.begin(), w.begin() + i);
        v.insert(v.end(), w.begin() + i + 2, w.end());
        emit(std::move(v));
      }
    }

    if (ins && n + 2 <= ctx.max_len) {
      auto emit_all_gaps = [&](const Term& lo, const Term& hi) {
        for (int g = 0; g <= n; ++g) {
          Word v(w.begin(), w.begin() + g);
          v.push_back(inv ? lo : hi);
          v.push_back(inv ? hi : lo);
          v.insert(v.end(), w.begin() + g, w.end());
          emit(std::move(v));
        }
      };
      for (int m = -ctx.max_degree; m + 1 <= ctx.max_degree; ++m) {
        for (const std::string& a : ctx.insert_atoms) {
          emit_all_gaps(Term::simple(a, m), Term::simple(a, m + 1));
        }
        for (const Word& c : ctx.insert_contents) {
          if (depth + 1 + pregroup::pi_depth(c) > ctx.max_pi_depth) continue;
          if (pregroup::max_abs_degree(c) > ctx.max_degree) continue;
          emit_all_gaps(Term::pi(c, m), Term::pi(c, m + 1));
        }
      }
    }

    if (spec) {
      substitutions(w, inv, emit);
      conversions(w, inv, depth, emit);
      swaps(w, inv, emit);
    }

    for (int i = 0; i < n; ++i) {
      if (!w[i].is_pi()) continue;
      Emit rebuild = [&, i](Word c) {
        Word v = w;
        v[i] = Term::pi(std::move(c), w[i].degree);
        emit(std::move(v));
      };
      level(w[i].content, inv ^ odd(w[i].degree), depth + 1, rebuild);
    }
  }

  void substitutions(const Word& w, bool inv, const Emit& emit) const {
    for (int i = 0; i < static_cast<int>(w.size()); ++i) {
      const Term& t = w[i];
      if (!t.is_simple() || !ctx.poset.has_atom(t.atom)) continue;
      bool eff_odd = odd(t.degree) ^ inv;
      const auto& bs = eff_odd ? ctx.poset.downward(t.atom) : ctx.poset.upward(t.atom);
      for (const std::string& b : bs) {
        Word v = w;
        v[i] = Term::simple(b, t.degree);
        emit(std::move(v));
      }
    }
  }

  void conversions(const Word& w, bool inv, int depth, const Emit& emit) const {
    bool sym = ctx.mind == MindMode::Symmetric;
    for (int i = 0; i < static_cast<int>(w.size()); ++i) {
      const Term& t = w[i];
      bool eff_odd = odd(t.degree) ^ inv;
      if (t.is_simple()) {
        if (!sym && eff_odd) continue;
        if (depth + 1 > ctx.max_pi_depth) continue;
        auto decorate = [&](const std::string& b) {
          Word v = w;
          v[i] = Term::pi({Term::simple(b, 0)}, t.degree);
          emit(std::move(v));
        };
        if (ctx.ordered_mind && ctx.poset.has_atom(t.atom)) {
          for (const std::string& b : ctx.poset.upward(t.atom)) decorate(b);
        } else {
          decorate(t.atom);
        }
      } else if (t.content.size() == 1 && t.content[0].is_simple() &&
                 t.content[0].degree == 0) {
        if (!sym && !eff_odd) continue;
        auto undecorate = [&](const std::string& a) {
          Word v = w;
          v[i] = Term::simple(a, t.degree);
          emit(std::move(v));
        };
        const std::string& b = t.content[0].atom;
        if (ctx.ordered_mind && ctx.poset.has_atom(b)) {
          for (const std::string& a : ctx.poset.downward(b)) undecorate(a);
        } else {
          undecorate(b);
        }
      }
    }
  }

  void swaps(const Word& w, bool inv, const Emit& emit) const {
    if (ctx.precyclic == Precyclic::None) return;
    bool left = ctx.precyclic == Precyclic::Left || ctx.precyclic == Precyclic::Both;
    bool right = ctx.precyclic == Precyclic::Right || ctx.precyclic == Precyclic::Both;
    int n = static_cast<int>(w.size());
    for (int i = 0; i < n; ++i) {
      for (int la = 1; la <= ctx.max_block && i + la <= n; ++la) {
        for (int lb = 1; lb <= ctx.max_block && i + la + lb <= n; ++lb) {
          bool all_pi = true;
          for (int k = i; k < i + la + lb; ++k) all_pi = all_pi && w[k].is_pi();
          if (!all_pi) continue;
          for (int shift : {2, -2}) {
            bool up = shift > 0;
            if (inv) up = !up;
            if (up ? !left : !right) continue;
            Word moved(shift > 0 ? w.begin() + i + la : w.begin() + i,
                       shift > 0 ? w.begin() + i + la + lb : w.begin() + i + la);
            for (Term& t : moved) t.degree += shift;
            if (pregroup::max_abs_degree(moved) > ctx.max_degree) continue;
            Word v(w.begin(), w.begin() + i);
            if (shift > 0) {
              v.insert(v.end(), moved.begin(), moved.end());
              v.insert(v.end(), w.begin() + i, w.begin() + i + la);
            } else {
              v.insert(v.end(), w.begin() + i + la, w.begin() + i + la + lb);
              v.insert(v.end(), moved.begin(), moved.end());
            }
            v.insert(v.end(), w.begin() + i + la + lb, w.end());
            emit(std::move(v));
          }
        }
      }
    }
  }
};

struct Bfs {
  std::vector<Word> words;
  std::vector<int> dist;
  std::vector<long long> paths;
  std::map<std::string, int> index;
  bool truncated = false;
};

Bfs run_bfs(const Word& x, const RuleContext& ctx, int max_steps, long long max_visited,
            bool restricted, const std::string* goal, int* goal_dist) {
  if (ctx.deep_pi) throw std::invalid_argument("oracle does not model run wraps");
  Gen gen{ctx, true, !restricted, true};
  Bfs b;
  b.words.push_back(x);
  b.dist.push_back(0);
  b.paths.push_back(1);
  b.index[pregroup::render(x)] = 0;
  int found = -1;
  for (size_t head = 0; head < b.words.size(); ++head) {
    int d = b.dist[head];
    if (d >= max_steps) break;
    if (found >= 0 && d + 1 > found) break;
    Word w = b.words[head];
    long long in_paths = b.paths[head];
    std::set<std::string> seen_here;
    gen.level(w, false, 0, [&](Word v) {
      std::string key = pregroup::render(v);
      if (!seen_here.insert(key).second) return;
      auto it = b.index.find(key);
      if (it != b.index.end()) {
        if (b.dist[it->second] == d + 1) b.paths[it->second] += in_paths;
        return;
      }
      if (static_cast<long long>(b.words.size()) >= max_visited) {
        b.truncated = true;
        return;
      }
      int id = static_cast<int>(b.words.size());
      b.index[key] = id;
      b.words.push_back(std::move(v));
      b.dist.push_back(d + 1);
      b.paths.push_back(in_paths);
      if (goal && key == *goal && found < 0) found = d + 1;
    });
  }
  if (goal_dist) *goal_dist = found;
  return b;
}

}  // namespace

std::vector<Word> successors(const Word& w, const RuleContext& ctx, bool deletions,
                             bool insertions, bool specials) {
  if (ctx.deep_pi) throw std::invalid_argument("oracle does not model run wraps");
  Gen gen{ctx, deletions, insertions, specials};
  std::vector<Word> out;
  gen.level(w, false, 0, [&](Word v) { out.push_back(std::move(v)); });
  return out;
}

Reach reach(const Word& x, const Word& y, const RuleContext& ctx, int max_steps,
            long long max_visited, bool restricted) {
  Reach r;
  std::string goal = pregroup::render(y);
  if (goal == pregroup::render(x)) {
    r.status = Reach::Status::Found;
    r.distance = 0;
    r.paths = 1;
    r.visited = 1;
    return r;
  }
  int found = -1;
  Bfs b = run_bfs(x, ctx, max_steps, max_visited, restricted, &goal, &found);
  r.visited = static_cast<long long>(b.words.size());
  if (found >= 0) {
    r.status = Reach::Status::Found;
    r.distance = found;
    r.paths = b.paths[b.index.at(goal)];
  } else {
    r.status = b.truncated ? Reach::Status::Truncated : Reach::Status::Exhausted;
  }
  return r;
}

Closure closure(const Word& x, const RuleContext& ctx, int max_steps, long long max_visited,
                bool restricted) {
  Bfs b = run_bfs(x, ctx, max_steps, max_visited, restricted, nullptr, nullptr);
  Closure c;
  c.words = std::move(b.words);
  c.dist = std::move(b.dist);
  c.truncated = b.truncated;
  return c;
}

bool classic_nullable(const Word& w, const Poset& poset) {
  int n = static_cast<int>(w.size());
  for (const Term& t : w) {
    if (t.is_pi()) throw std::invalid_argument("classic_nullable needs an undecorated word");
  }
  auto pairable = [&](const Term& a, const Term& b) {
    if (b.degree != a.degree + 1) return false;
    if (!poset.has_atom(a.atom) || !poset.has_atom(b.atom)) return a.atom == b.atom;
    return odd(a.degree) ? poset.leq(b.atom, a.atom) : poset.leq(a.atom, b.atom);
  };
  // null[i][j]: w[i..j) rewrites to 1.  A nullable span pairs its first
  // term with some k splitting the rest into two nullable spans.
  std::vector<std::vector<char>> null(n + 1, std::vector<char>(n + 1, 0));
  for (int i = 0; i <= n; ++i) null[i][i] = 1;
  for (int len = 2; len <= n; len += 2) {
    for (int i = 0; i + len <= n; ++i) {
      int j = i + len;
      for (int k = i + 1; k < j; k += 2) {
        if (pairable(w[i], w[k]) && null[i + 1][k] && null[k + 1][j]) {
          null[i][j] = 1;
          break;
        }
      }
    }
  }
  return null[0][n] != 0;
}

}  // namespace oracle
