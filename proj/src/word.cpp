#include "pregroup/word.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace pregroup {

Term Term::simple(std::string name, int degree) {
  Term t;
  t.kind = Kind::Simple;
  t.atom = std::move(name);
  t.degree = degree;
  return t;
}

Term Term::pi(Word content, int degree) {
  if (content.empty()) throw std::invalid_argument("pi content must be non-empty");
  Term t;
  t.kind = Kind::Pi;
  t.content = std::move(content);
  t.degree = degree;
  return t;
}

bool operator==(const Term& a, const Term& b) {
  if (a.kind != b.kind || a.degree != b.degree) return false;
  if (a.kind == Term::Kind::Simple) return a.atom == b.atom;
  return a.content == b.content;
}

bool operator==(const Word& a, const Word& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return false;
  }
  return true;
}

bool valid_atom_name(const std::string& name) {
  if (name.empty() || name == "pi") return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word adjoint_power(const Word& w, int n) {
  Word out = w;
  if (n % 2 != 0) std::reverse(out.begin(), out.end());
  for (Term& t : out) t.degree += n;
  return out;
}

Word right_adjoint(const Word& w) { return adjoint_power(w, 1); }
Word left_adjoint(const Word& w) { return adjoint_power(w, -1); }

int max_abs_degree(const Word& w) {
  int best = 0;
  for (const Term& t : w) {
    best = std::max(best, std::abs(t.degree));
    if (t.is_pi()) best = std::max(best, max_abs_degree(t.content));
  }
  return best;
}

int pi_depth(const Word& w) {
  int best = 0;
  for (const Term& t : w) {
    if (t.is_pi()) best = std::max(best, 1 + pi_depth(t.content));
  }
  return best;
}

static void degree_suffix(std::string& out, int d) {
  switch (d) {
    case 0: return;
    case 1: out += "^r"; return;
    case 2: out += "^rr"; return;
    case -1: out += "^l"; return;
    case -2: out += "^ll"; return;
    default:
      out += "^(";
      out += std::to_string(d);
      out += ")";
  }
}

std::string render(const Term& t) {
  std::string out;
  if (t.is_simple()) {
    out = t.atom;
  } else {
    out = "pi(";
    out += render(t.content);
    out += ")";
  }
  degree_suffix(out, t.degree);
  return out;
}

std::string render(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += render(w[i]);
  }
  return out;
}

}  // namespace pregroup
