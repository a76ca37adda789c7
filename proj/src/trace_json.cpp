#include "pregroup/trace_json.hpp"

#include <algorithm>
#include <set>

#include "pregroup/parse.hpp"

namespace pregroup {

namespace {

bool odd(int d) { return d % 2 != 0; }

TraceJson payload_json(const Step& s) {
  TraceJson p = TraceJson::object();
  struct Visitor {
    const Step& s;
    TraceJson& p;
    void operator()(const NoPayload&) const {}
    void operator()(const InsertPayload& v) const {
      int base = std::min(v.left.degree, v.right.degree);
      if (v.left.is_simple()) {
        p["atom"] = v.left.atom;
      } else {
        p["content"] = render(v.left.content);
      }
      p["degree"] = base;
    }
    void operator()(const SubstPayload& v) const {
      p["from"] = v.from;
      p["to"] = v.to;
    }
    void operator()(const MindPayload& v) const {
      p["dir"] = v.decorate ? "decorate" : "undecorate";
      p["atom"] = v.atom;
      p["inner"] = v.inner;
    }
    void operator()(const SwapPayload& v) const {
      p["len_a"] = v.len_a;
      p["len_b"] = v.len_b;
      if (s.rule == RuleTag::PiInd) p["shift"] = v.shift;
    }
    void operator()(const WrapPayload& v) const {
      p["dir"] = v.wrap ? "wrap" : "unwrap";
      p["len"] = v.len;
      p["degree"] = v.degree;
    }
  };
  std::visit(Visitor{s, p}, s.payload);
  return p;
}

[[noreturn]] void bad(const std::string& message) { throw TraceError(message); }

void require_keys(const TraceJson& obj, const std::set<std::string>& keys,
                  const std::string& where) {
  if (!obj.is_object()) bad(where + " is not an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!keys.count(it.key())) bad(where + " has unexpected key '" + it.key() + "'");
  }
  for (const std::string& k : keys) {
    if (!obj.contains(k)) bad(where + " is missing key '" + k + "'");
  }
}

std::string get_string(const TraceJson& obj, const char* key, const std::string& where) {
  if (!obj[key].is_string()) bad(where + " key '" + key + "' is not a string");
  return obj[key].get<std::string>();
}

int get_int(const TraceJson& obj, const char* key, const std::string& where) {
  if (!obj[key].is_number_integer()) bad(where + " key '" + key + "' is not an integer");
  return obj[key].get<int>();
}

Word parse_or_bad(const std::string& text, const std::string& where) {
  try {
    return parse_word(text);
  } catch (const ParseError& e) {
    bad(where + " does not parse: " + e.what());
  }
}

bool inversion_at(const Word& w, const std::vector<int>& path, const std::string& where) {
  const Word* level = &w;
  bool inv = false;
  for (int idx : path) {
    if (idx < 0 || idx >= static_cast<int>(level->size()) || !(*level)[idx].is_pi()) {
      bad(where + " path does not address a decorated term");
    }
    inv ^= odd((*level)[idx].degree);
    level = &(*level)[idx].content;
  }
  return inv;
}

InsertPayload make_insert(const Term& lo, const Term& hi, bool inv) {
  return inv ? InsertPayload{lo, hi} : InsertPayload{hi, lo};
}

Payload decode_payload(RuleTag tag, const TraceJson& p, const Word& current,
                       const std::vector<int>& path, const std::string& where) {
  switch (tag) {
    case RuleTag::Con:
    case RuleTag::PiCon:
    case RuleTag::IndC:
      require_keys(p, {}, where);
      return NoPayload{};
    case RuleTag::Exp: {
      require_keys(p, {"atom", "degree"}, where);
      int n = get_int(p, "degree", where);
      bool inv = inversion_at(current, path, where);
      std::string a = get_string(p, "atom", where);
      return make_insert(Term::simple(a, n), Term::simple(a, n + 1), inv);
    }
    case RuleTag::PiExp: {
      require_keys(p, {"content", "degree"}, where);
      int n = get_int(p, "degree", where);
      bool inv = inversion_at(current, path, where);
      Word c = parse_or_bad(get_string(p, "content", where), where);
      if (c.empty()) bad(where + " content is empty");
      return make_insert(Term::pi(c, n), Term::pi(c, n + 1), inv);
    }
    case RuleTag::IndE: {
      int n;
      bool inv = inversion_at(current, path, where);
      if (p.contains("atom")) {
        require_keys(p, {"atom", "degree"}, where);
        n = get_int(p, "degree", where);
        std::string a = get_string(p, "atom", where);
        return make_insert(Term::simple(a, n), Term::simple(a, n + 1), inv);
      }
      require_keys(p, {"content", "degree"}, where);
      n = get_int(p, "degree", where);
      Word c = parse_or_bad(get_string(p, "content", where), where);
      if (c.empty()) bad(where + " content is empty");
      return make_insert(Term::pi(c, n), Term::pi(c, n + 1), inv);
    }
    case RuleTag::Ind:
      require_keys(p, {"from", "to"}, where);
      return SubstPayload{get_string(p, "from", where), get_string(p, "to", where)};
    case RuleTag::MInd: {
      require_keys(p, {"dir", "atom", "inner"}, where);
      std::string dir = get_string(p, "dir", where);
      if (dir != "decorate" && dir != "undecorate") bad(where + " has unknown dir");
      return MindPayload{dir == "decorate", get_string(p, "atom", where),
                         get_string(p, "inner", where)};
    }
    case RuleTag::Pre:
      require_keys(p, {"len_a", "len_b"}, where);
      return SwapPayload{get_int(p, "len_a", where), get_int(p, "len_b", where), 2};
    case RuleTag::RPre:
      require_keys(p, {"len_a", "len_b"}, where);
      return SwapPayload{get_int(p, "len_a", where), get_int(p, "len_b", where), -2};
    case RuleTag::PiInd: {
      if (p.contains("from")) {
        require_keys(p, {"from", "to"}, where);
        return SubstPayload{get_string(p, "from", where), get_string(p, "to", where)};
      }
      if (p.contains("len_a")) {
        require_keys(p, {"len_a", "len_b", "shift"}, where);
        int shift = get_int(p, "shift", where);
        if (shift != 2 && shift != -2) bad(where + " shift must be +-2");
        return SwapPayload{get_int(p, "len_a", where), get_int(p, "len_b", where), shift};
      }
      if (p.contains("dir")) {
        std::string dir = get_string(p, "dir", where);
        if (dir == "decorate" || dir == "undecorate") {
          require_keys(p, {"dir", "atom", "inner"}, where);
          return MindPayload{dir == "decorate", get_string(p, "atom", where),
                             get_string(p, "inner", where)};
        }
        if (dir == "wrap" || dir == "unwrap") {
          require_keys(p, {"dir", "len", "degree"}, where);
          return WrapPayload{dir == "wrap", get_int(p, "len", where),
                             get_int(p, "degree", where)};
        }
        bad(where + " has unknown dir");
      }
      bad(where + " payload fits no nested rule shape");
    }
  }
  bad(where + " has unknown rule");
}

}  // namespace

TraceJson step_payload_json(const Step& s) { return payload_json(s); }

TraceJson step_to_json(const Step& s, const Word& after) {
  TraceJson js = TraceJson::object();
  js["rule"] = rule_name(s.rule);
  js["path"] = s.path;
  js["position"] = s.position;
  js["payload"] = payload_json(s);
  js["after"] = render(after);
  return js;
}

TraceJson trace_to_json(const Word& input, SearchStatus status, const Derivation* derivation) {
  TraceJson j = TraceJson::object();
  j["input"] = render(input);
  j["result"] = status_name(status);
  j["final"] = derivation ? render(derivation->final_word()) : render(input);
  j["normal"] = derivation ? is_normal(*derivation) : false;
  TraceJson steps = TraceJson::array();
  if (derivation) {
    for (size_t i = 0; i < derivation->steps.size(); ++i) {
      steps.push_back(step_to_json(derivation->steps[i], derivation->words[i]));
    }
  }
  j["steps"] = std::move(steps);
  return j;
}

DecodedTrace trace_from_json(const TraceJson& j) {
  require_keys(j, {"input", "result", "final", "normal", "steps"}, "trace");
  DecodedTrace t;
  t.input = parse_or_bad(get_string(j, "input", "trace"), "trace input");
  std::string result = get_string(j, "result", "trace");
  if (result == "derivable") {
    t.status = SearchStatus::Derivable;
  } else if (result == "not_derivable") {
    t.status = SearchStatus::NotDerivable;
  } else if (result == "unknown") {
    t.status = SearchStatus::Unknown;
  } else {
    bad("trace has unknown result '" + result + "'");
  }
  if (!j["normal"].is_boolean()) bad("trace key 'normal' is not a boolean");
  t.normal = j["normal"].get<bool>();
  if (!j["steps"].is_array()) bad("trace key 'steps' is not an array");

  t.derivation.start = t.input;
  Word current = t.input;
  int n = 0;
  for (const TraceJson& js : j["steps"]) {
    std::string where = "step " + std::to_string(n + 1);
    require_keys(js, {"rule", "path", "position", "payload", "after"}, where);
    std::optional<RuleTag> tag = rule_from_name(get_string(js, "rule", where));
    if (!tag) bad(where + " has unknown rule");
    if (!js["path"].is_array()) bad(where + " path is not an array");
    std::vector<int> path;
    for (const TraceJson& e : js["path"]) {
      if (!e.is_number_integer()) bad(where + " path entry is not an integer");
      path.push_back(e.get<int>());
    }
    Step s;
    s.rule = *tag;
    s.path = path;
    s.position = get_int(js, "position", where);
    s.payload = decode_payload(*tag, js["payload"], current, path, where);
    Word after = parse_or_bad(get_string(js, "after", where), where + " after");
    t.derivation.steps.push_back(std::move(s));
    t.derivation.words.push_back(after);
    current = std::move(after);
    ++n;
  }

  std::string final_text = get_string(j, "final", "trace");
  if (final_text != render(current)) bad("trace final does not match the last step");
  if (t.status == SearchStatus::Derivable) {
    if (t.normal != is_normal(t.derivation)) bad("trace normal flag is inconsistent");
  } else {
    if (!t.derivation.steps.empty()) bad("trace result forbids steps");
    if (t.normal) bad("trace normal flag is inconsistent");
  }
  return t;
}

}  // namespace pregroup
