#include "pregroup/grammar.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "pregroup/parse.hpp"

namespace pregroup {

std::vector<std::pair<std::string, std::string>> Grammar::order_pairs() const {
  std::vector<std::pair<std::string, std::string>> pairs = order;
  for (const auto& [a, b] : equiv) {
    pairs.emplace_back(a, b);
    pairs.emplace_back(b, a);
  }
  return pairs;
}

const LexEntry* Grammar::find(const std::string& token) const {
  for (const LexEntry& e : lexicon) {
    if (e.token == token) return &e;
  }
  return nullptr;
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

[[noreturn]] void bad(int line, const std::string& message) { throw GrammarError(line, message); }

Word parse_word_at(const std::string& text, int line) {
  try {
    return parse_word(text);
  } catch (const ParseError& e) {
    bad(line, std::string("bad word '") + text + "': " + e.what());
  }
}

void collect_word_atoms(const Word& w, std::set<std::string>& out) {
  for (const Term& t : w) {
    if (t.is_simple()) {
      out.insert(t.atom);
    } else {
      collect_word_atoms(t.content, out);
    }
  }
}

void require_declared(const Word& w, const std::set<std::string>& declared, int line) {
  std::set<std::string> used;
  collect_word_atoms(w, used);
  for (const std::string& a : used) {
    if (!declared.count(a)) bad(line, "undeclared atom: " + a);
  }
}

}  // namespace

Grammar load_grammar(const std::string& text) {
  Grammar g;
  std::set<std::string> declared;
  bool saw_precyclic = false, saw_mind = false;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    size_t hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    size_t colon = s.find(':');
    if (colon == std::string::npos) bad(line, "expected '<keyword>:'");
    std::string key = trim(s.substr(0, colon));
    std::string rest = trim(s.substr(colon + 1));

    if (key == "atoms") {
      for (const std::string& a : split_ws(rest)) {
        if (!valid_atom_name(a)) bad(line, "bad atom name: " + a);
        if (declared.count(a)) bad(line, "duplicate atom: " + a);
        declared.insert(a);
        g.atoms.push_back(a);
      }
    } else if (key == "order" || key == "equiv") {
      const char* arrow = key == "order" ? "->" : "<->";
      size_t at = rest.find(arrow);
      if (at == std::string::npos) bad(line, key + " line needs '" + arrow + "'");
      std::string a = trim(rest.substr(0, at));
      std::string b = trim(rest.substr(at + std::string(arrow).size()));
      if (!declared.count(a)) bad(line, "undeclared atom: " + a);
      if (!declared.count(b)) bad(line, "undeclared atom: " + b);
      if (key == "order") {
        g.order.emplace_back(a, b);
      } else {
        g.equiv.emplace_back(a, b);
      }
    } else if (key == "precyclic") {
      if (saw_precyclic) bad(line, "duplicate precyclic line");
      std::optional<Precyclic> p = precyclic_from_name(rest);
      if (!p) bad(line, "precyclic must be left, right, both or none");
      g.precyclic = *p;
      saw_precyclic = true;
    } else if (key == "mind") {
      if (saw_mind) bad(line, "duplicate mind line");
      std::optional<MindMode> m = mind_from_name(rest);
      if (!m) bad(line, "mind must be directed or symmetric");
      g.mind = *m;
      saw_mind = true;
    } else if (key == "target") {
      for (const std::string& part : split_on(rest, ';')) {
        std::string t = trim(part);
        if (t.empty()) bad(line, "empty target");
        Word w = parse_word_at(t, line);
        require_declared(w, declared, line);
        g.targets.push_back(std::move(w));
      }
    } else if (key.rfind("lex ", 0) == 0) {
      std::string spec = trim(key.substr(4));
      if (spec.size() < 2 || spec.front() != '"' || spec.back() != '"') {
        bad(line, "lex token must be double-quoted");
      }
      std::string token = spec.substr(1, spec.size() - 2);
      if (trim(token).empty()) bad(line, "empty lex token");
      token = trim(token);
      std::vector<Word> typings;
      for (const std::string& part : split_on(rest, '|')) {
        std::string t = trim(part);
        if (t.empty()) bad(line, "empty typing alternative");
        Word w = parse_word_at(t, line);
        require_declared(w, declared, line);
        typings.push_back(std::move(w));
      }
      LexEntry* entry = nullptr;
      for (LexEntry& e : g.lexicon) {
        if (e.token == token) entry = &e;
      }
      if (!entry) {
        g.lexicon.push_back(LexEntry{token, {}});
        entry = &g.lexicon.back();
      }
      for (Word& w : typings) {
        if (std::find(entry->typings.begin(), entry->typings.end(), w) ==
            entry->typings.end()) {
          entry->typings.push_back(std::move(w));
        }
      }
    } else {
      bad(line, "unknown keyword: " + key);
    }
  }
  if (g.atoms.empty()) bad(0, "no atoms declared");
  if (g.targets.empty()) bad(0, "no target declared");
  return g;
}

Grammar load_grammar_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad(0, "cannot open grammar file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_grammar(buf.str());
}

std::string serialize(const Grammar& g) {
  std::ostringstream out;
  out << "atoms:";
  for (const std::string& a : g.atoms) out << ' ' << a;
  out << '\n';
  for (const auto& [a, b] : g.order) out << "order: " << a << " -> " << b << '\n';
  for (const auto& [a, b] : g.equiv) out << "equiv: " << a << " <-> " << b << '\n';
  out << "precyclic: " << precyclic_name(g.precyclic) << '\n';
  out << "mind: " << mind_name(g.mind) << '\n';
  out << "target: ";
  for (size_t i = 0; i < g.targets.size(); ++i) {
    if (i) out << " ; ";
    out << render(g.targets[i]);
  }
  out << '\n';
  for (const LexEntry& e : g.lexicon) {
    out << "lex \"" << e.token << "\": ";
    for (size_t i = 0; i < e.typings.size(); ++i) {
      if (i) out << " | ";
      out << render(e.typings[i]);
    }
    out << '\n';
  }
  return out.str();
}

std::vector<std::string> tokenize(const Grammar& g, const std::string& sentence) {
  std::vector<std::string> words = split_ws(sentence);
  std::vector<std::vector<std::string>> token_words;
  size_t longest = 1;
  for (const LexEntry& e : g.lexicon) {
    token_words.push_back(split_ws(e.token));
    longest = std::max(longest, token_words.back().size());
  }
  std::vector<std::string> out;
  size_t i = 0;
  while (i < words.size()) {
    size_t best = 0;
    for (size_t len = std::min(longest, words.size() - i); len >= 1 && !best; --len) {
      for (const auto& tw : token_words) {
        if (tw.size() != len) continue;
        if (std::equal(tw.begin(), tw.end(), words.begin() + i)) {
          best = len;
          break;
        }
      }
    }
    if (!best) throw GrammarError(0, "unknown token: " + words[i]);
    std::string token = words[i];
    for (size_t k = 1; k < best; ++k) token += " " + words[i + k];
    out.push_back(token);
    i += best;
  }
  return out;
}

std::vector<Word> type_sentence(const Grammar& g, const std::vector<std::string>& tokens) {
  std::vector<const LexEntry*> entries;
  for (const std::string& t : tokens) {
    const LexEntry* e = g.find(t);
    if (!e) throw GrammarError(0, "unknown token: " + t);
    entries.push_back(e);
  }
  std::vector<Word> out{Word{}};
  for (const LexEntry* e : entries) {
    std::vector<Word> next;
    next.reserve(out.size() * e->typings.size());
    for (const Word& prefix : out) {
      for (const Word& alt : e->typings) next.push_back(concat(prefix, alt));
    }
    out = std::move(next);
  }
  std::vector<Word> dedup;
  std::set<std::string> seen;
  for (Word& w : out) {
    if (seen.insert(render(w)).second) dedup.push_back(std::move(w));
  }
  return dedup;
}

RuleContext grammar_context(const Grammar& g, const Budget& budget,
                            const std::vector<Word>& words) {
  std::vector<Word> all = words;
  all.insert(all.end(), g.targets.begin(), g.targets.end());
  return make_context(g.atoms, g.order_pairs(), g.precyclic, g.mind, budget, all);
}

Verdict check(const Grammar& g, const std::vector<std::string>& tokens, const Budget& budget) {
  Verdict v;
  v.tokens = tokens;
  std::vector<Word> typings = type_sentence(g, tokens);
  RuleContext ctx = grammar_context(g, budget, typings);
  bool any_unknown = false;
  for (const Word& typing : typings) {
    ++v.typings_tried;
    SearchResult r = reduce_to(typing, g.targets, ctx, budget);
    if (r.status == SearchStatus::Derivable) {
      v.accepted = true;
      v.typing = typing;
      v.result = std::move(r);
      return v;
    }
    if (r.status == SearchStatus::Unknown) any_unknown = true;
  }
  v.unknown = any_unknown;
  return v;
}

}  // namespace pregroup
