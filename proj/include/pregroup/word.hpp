#pragma once

#include <string>
#include <vector>

namespace pregroup {

struct Term;

// A word is a finite sequence of terms; the empty word is the monoid unit
// and renders as "1".
using Word = std::vector<Term>;

// A term is either a simple type (atom raised to an integer adjoint degree)
// or a decorated type pi(w) raised to a degree.  Decorated contents are
// never empty.
struct Term {
  enum class Kind { Simple, Pi };

  Kind kind = Kind::Simple;
  std::string atom;  // Simple only
  Word content;      // Pi only, non-empty
  int degree = 0;

  static Term simple(std::string name, int degree = 0);
  static Term pi(Word content, int degree = 0);

  bool is_pi() const { return kind == Kind::Pi; }
  bool is_simple() const { return kind == Kind::Simple; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
};

bool operator==(const Word& a, const Word& b);

// Atom names: letters, digits, underscore; first char a letter; "pi" is
// reserved by the surface syntax.
bool valid_atom_name(const std::string& name);

Word concat(const Word& a, const Word& b);

// Right adjoint: reverse the word, add one to every top-level degree.
// Decorated contents are untouched.
Word right_adjoint(const Word& w);
// Left adjoint: reverse the word, subtract one from every top-level degree.
Word left_adjoint(const Word& w);
// n-fold adjoint: positive n = right adjoints, negative = left.  Even n
// preserves order, odd n reverses.
Word adjoint_power(const Word& w, int n);

// Largest |degree| appearing anywhere in the word (0 for the empty word).
int max_abs_degree(const Word& w);
// Deepest pi nesting (0 for a word with no decorated terms).
int pi_depth(const Word& w);
// Number of terms at the top level.
inline int top_length(const Word& w) { return static_cast<int>(w.size()); }

// Canonical text form.  Degrees -2..2 render as ^ll ^l (none) ^r ^rr,
// anything else as ^(k).  Terms are space-separated; the empty word is "1".
std::string render(const Term& t);
std::string render(const Word& w);

}  // namespace pregroup
