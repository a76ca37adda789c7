#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pregroup/engine.hpp"
#include "pregroup/grammar.hpp"
#include "pregroup/parse.hpp"
#include "pregroup/trace_json.hpp"

namespace {

using namespace pregroup;

constexpr int kExitFound = 0;
constexpr int kExitNotFound = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnknown = 3;

struct CommonArgs {
  std::string grammar_path;
  std::string atoms;
  std::vector<std::string> order;
  std::vector<std::string> equiv;
  std::string precyclic = "none";
  std::string mind = "directed";
  std::string format = "text";
  Budget budget;
  bool inline_used = false;
};

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void usage_error(const std::string& message) {
  throw CLI::ValidationError("usage", message);
}

void add_budget_flags(CLI::App* sub, CommonArgs& a) {
  sub->add_option("--max-steps", a.budget.max_steps, "Derivation length bound");
  sub->add_option("--max-visited", a.budget.max_visited, "Visited-word bound");
  sub->add_option("--max-degree", a.budget.max_degree, "Degree clamp (-1: from inputs)");
  sub->add_option("--max-len", a.budget.max_len, "Per-level length clamp (-1: from inputs)");
  sub->add_option("--max-pi-depth", a.budget.max_pi_depth, "Nesting clamp (-1: from inputs)");
  sub->add_flag("--parallel", a.budget.parallel, "Parallel frontier expansion");
  sub->add_option("--format", a.format, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
}

void add_inline_context_flags(CLI::App* sub, CommonArgs& a) {
  sub->add_option("grammar", a.grammar_path, "Grammar file for order and switches");
  sub->add_option("--atoms", a.atoms, "Inline atoms, space-separated");
  sub->add_option("--order", a.order, "Inline order edge 'a->b' (repeatable)");
  sub->add_option("--equiv", a.equiv, "Inline equivalence 'a<->b' (repeatable)");
  sub->add_option("--precyclic", a.precyclic, "Inline precyclicity")
      ->check(CLI::IsMember({"left", "right", "both", "none"}));
  sub->add_option("--mind", a.mind, "Inline conversion mode")
      ->check(CLI::IsMember({"directed", "symmetric"}));
}

void note_inline_usage(CLI::App* sub, CommonArgs& a) {
  a.inline_used = sub->count("--atoms") || sub->count("--order") || sub->count("--equiv") ||
                  sub->count("--precyclic") || sub->count("--mind");
  if (!a.grammar_path.empty() && a.inline_used) {
    usage_error("give either a grammar file or inline --atoms/--order/... flags, not both");
  }
}

std::pair<std::string, std::string> parse_edge(const std::string& text, const char* arrow) {
  size_t at = text.find(arrow);
  if (at == std::string::npos) usage_error("edge '" + text + "' needs '" + arrow + "'");
  std::string a = trim(text.substr(0, at));
  std::string b = trim(text.substr(at + std::string(arrow).size()));
  if (a.empty() || b.empty()) usage_error("edge '" + text + "' is incomplete");
  return {a, b};
}

// Rewrite context from either the grammar file or the inline flags.
RuleContext build_context(const CommonArgs& a, const std::vector<Word>& words) {
  if (!a.grammar_path.empty()) {
    Grammar g = load_grammar_file(a.grammar_path);
    return grammar_context(g, a.budget, words);
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const std::string& e : a.order) pairs.push_back(parse_edge(e, "->"));
  for (const std::string& e : a.equiv) {
    auto [x, y] = parse_edge(e, "<->");
    pairs.emplace_back(x, y);
    pairs.emplace_back(y, x);
  }
  return make_context(split_ws(a.atoms), pairs, *precyclic_from_name(a.precyclic),
                      *mind_from_name(a.mind), a.budget, words);
}

std::string path_text(const std::vector<int>& path) {
  std::string out = "[";
  for (size_t i = 0; i < path.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(path[i]);
  }
  return out + "]";
}

void print_trace_text(std::ostream& out, const Word& input, SearchStatus status,
                      const Derivation* d) {
  out << "input: " << render(input) << "\n";
  out << "result: " << status_name(status) << "\n";
  out << "final: " << (d ? render(d->final_word()) : render(input)) << "\n";
  out << "normal: " << (d && is_normal(*d) ? "true" : "false") << "\n";
  out << "steps:\n";
  if (!d) return;
  for (size_t i = 0; i < d->steps.size(); ++i) {
    const Step& s = d->steps[i];
    out << "  " << i + 1 << ". " << rule_name(s.rule) << " path=" << path_text(s.path)
        << " pos=" << s.position << " " << step_payload_json(s).dump() << " -> "
        << render(d->words[i]) << "\n";
  }
}

int status_exit(SearchStatus s) {
  switch (s) {
    case SearchStatus::Derivable: return kExitFound;
    case SearchStatus::NotDerivable: return kExitNotFound;
    case SearchStatus::Unknown: return kExitUnknown;
  }
  return kExitUnknown;
}

int run_check(const CommonArgs& a, const std::string& sentence) {
  Grammar g = load_grammar_file(a.grammar_path);
  std::vector<std::string> tokens = tokenize(g, sentence);
  Verdict v = check(g, tokens, a.budget);
  const char* verdict = v.accepted ? "accepted" : (v.unknown ? "unknown" : "rejected");
  const Derivation* d =
      v.accepted && v.result.derivation ? &*v.result.derivation : nullptr;
  if (a.format == "json") {
    TraceJson j = TraceJson::object();
    j["sentence"] = sentence;
    j["tokens"] = tokens;
    j["verdict"] = verdict;
    j["typing"] = v.accepted ? TraceJson(render(v.typing)) : TraceJson(nullptr);
    j["typings_tried"] = v.typings_tried;
    j["trace"] = v.accepted ? trace_to_json(v.typing, v.result.status, d) : TraceJson(nullptr);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "sentence: " << sentence << "\n";
    std::cout << "tokens:";
    for (size_t i = 0; i < tokens.size(); ++i) {
      std::cout << (i ? " | " : " ") << tokens[i];
    }
    std::cout << "\n";
    std::cout << "verdict: " << verdict << "\n";
    if (v.accepted) {
      std::cout << "typing: " << render(v.typing) << "\n";
      print_trace_text(std::cout, v.typing, v.result.status, d);
    } else {
      std::cout << "typings tried: " << v.typings_tried << "\n";
    }
  }
  return v.accepted ? kExitFound : (v.unknown ? kExitUnknown : kExitNotFound);
}

int run_derive(const CommonArgs& a, const std::string& from, const std::string& to) {
  Word x = parse_word(from);
  Word y = parse_word(to);
  RuleContext ctx = build_context(a, {x, y});
  SearchResult r = derive(x, y, ctx, a.budget);
  const Derivation* d = r.derivation ? &*r.derivation : nullptr;
  if (a.format == "json") {
    std::cout << trace_to_json(x, r.status, d).dump(2) << "\n";
  } else {
    print_trace_text(std::cout, x, r.status, d);
  }
  return status_exit(r.status);
}

int run_nullable(const CommonArgs& a, const std::string& word) {
  Word w = parse_word(word);
  RuleContext ctx = build_context(a, {w});
  SearchResult r = nullable(w, ctx, a.budget);
  const Derivation* d = r.derivation ? &*r.derivation : nullptr;
  if (a.format == "json") {
    std::cout << trace_to_json(w, r.status, d).dump(2) << "\n";
  } else {
    print_trace_text(std::cout, w, r.status, d);
  }
  return status_exit(r.status);
}

int run_steps(const CommonArgs& a, const std::string& word, const std::string& families) {
  Word w = parse_word(word);
  RuleContext ctx = build_context(a, {w});
  RuleSet fams = RuleSet::all();
  if (!families.empty()) {
    fams = RuleSet{};
    std::string cur;
    std::istringstream in(families);
    while (std::getline(in, cur, ',')) {
      std::optional<RuleTag> t = rule_from_name(trim(cur));
      if (!t) usage_error("unknown rule tag: " + cur);
      fams = fams | RuleSet::of({*t});
    }
  }
  std::vector<std::pair<Step, Word>> rows;
  for (const Step& s : enumerate_steps(w, fams, ctx)) {
    std::optional<Word> v = try_apply(w, s, ctx);
    if (v) rows.emplace_back(s, std::move(*v));
  }
  if (a.format == "json") {
    TraceJson j = TraceJson::object();
    j["word"] = render(w);
    TraceJson steps = TraceJson::array();
    for (const auto& [s, v] : rows) steps.push_back(step_to_json(s, v));
    j["steps"] = std::move(steps);
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& [s, v] : rows) {
      std::cout << rule_name(s.rule) << " path=" << path_text(s.path) << " pos=" << s.position
                << " " << step_payload_json(s).dump() << " -> " << render(v) << "\n";
    }
  }
  return kExitFound;
}

int run_validate_trace(const CommonArgs& a, const std::string& file) {
  std::ifstream in(file);
  if (!in) {
    std::cerr << "error: cannot open trace file: " << file << "\n";
    return kExitUsage;
  }
  TraceJson j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    std::cerr << "error: trace file is not JSON: " << e.what() << "\n";
    return kExitUsage;
  }

  auto report = [&](bool valid, bool normal, int step, const std::string& message) {
    if (a.format == "json") {
      TraceJson out = TraceJson::object();
      out["valid"] = valid;
      out["normal"] = valid ? TraceJson(normal) : TraceJson(nullptr);
      out["step"] = valid ? TraceJson(nullptr) : TraceJson(step);
      out["message"] = valid ? TraceJson(nullptr) : TraceJson(message);
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "valid: " << (valid ? "true" : "false") << "\n";
      if (valid) {
        std::cout << "normal: " << (normal ? "true" : "false") << "\n";
      } else {
        if (step > 0) std::cout << "step: " << step << "\n";
        std::cout << "message: " << message << "\n";
      }
    }
    return valid ? kExitFound : kExitNotFound;
  };

  DecodedTrace t;
  try {
    t = trace_from_json(j);
  } catch (const TraceError& e) {
    return report(false, false, 0, e.what());
  }
  std::vector<Word> words{t.input};
  words.insert(words.end(), t.derivation.words.begin(), t.derivation.words.end());
  RuleContext ctx;
  if (!a.grammar_path.empty()) {
    Grammar g = load_grammar_file(a.grammar_path);
    ctx = grammar_context(g, a.budget, words);
  } else {
    CommonArgs defaults = a;
    defaults.precyclic = "both";
    ctx = build_context(defaults, words);
  }
  ValidationReport rep = validate(t.derivation, ctx);
  if (!rep.ok) return report(false, false, rep.first_invalid + 1, rep.message);
  return report(true, rep.normal, 0, "");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free pi-augmented pregroup rewriting and grammar checking"};
  app.require_subcommand(1);

  CommonArgs check_args, derive_args, nullable_args, steps_args, trace_args;
  std::string sentence, from, to, word_nullable, word_steps, families, trace_file;

  CLI::App* c_check = app.add_subcommand("check", "Check a sentence against a grammar");
  c_check->add_option("grammar", check_args.grammar_path, "Grammar file")->required();
  c_check->add_option("--sentence", sentence, "Sentence to check")->required();
  add_budget_flags(c_check, check_args);

  CLI::App* c_derive = app.add_subcommand("derive", "Search a derivation between two words");
  add_inline_context_flags(c_derive, derive_args);
  c_derive->add_option("--from", from, "Start word")->required();
  c_derive->add_option("--to", to, "Goal word")->required();
  add_budget_flags(c_derive, derive_args);

  CLI::App* c_null = app.add_subcommand("nullable", "Decide whether a word rewrites to 1");
  add_inline_context_flags(c_null, nullable_args);
  c_null->add_option("--word", word_nullable, "Word to test")->required();
  add_budget_flags(c_null, nullable_args);

  CLI::App* c_steps = app.add_subcommand("steps", "List one-step successors of a word");
  add_inline_context_flags(c_steps, steps_args);
  c_steps->add_option("--word", word_steps, "Word to expand")->required();
  c_steps->add_option("--families", families, "Comma-separated rule tags");
  add_budget_flags(c_steps, steps_args);

  CLI::App* c_trace = app.add_subcommand("validate-trace", "Re-check a JSON trace");
  c_trace->add_option("grammar", trace_args.grammar_path, "Grammar file for licensing");
  c_trace->add_option("--file", trace_file, "Trace JSON file")->required();
  add_budget_flags(c_trace, trace_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (c_check->parsed()) return run_check(check_args, sentence);
    if (c_derive->parsed()) {
      note_inline_usage(c_derive, derive_args);
      return run_derive(derive_args, from, to);
    }
    if (c_null->parsed()) {
      note_inline_usage(c_null, nullable_args);
      return run_nullable(nullable_args, word_nullable);
    }
    if (c_steps->parsed()) {
      note_inline_usage(c_steps, steps_args);
      return run_steps(steps_args, word_steps, families);
    }
    if (c_trace->parsed()) return run_validate_trace(trace_args, trace_file);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const GrammarError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
