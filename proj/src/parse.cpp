#include "pregroup/parse.hpp"

#include <cctype>

namespace pregroup {

namespace {

struct Cursor {
  const std::string& text;
  size_t pos = 0;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  bool at(char c) const { return !done() && text[pos] == c; }

  void skip_spaces() {
    while (!done() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, pos);
  }
};

std::string read_name(Cursor& c) {
  size_t start = c.pos;
  if (c.done() || !std::isalpha(static_cast<unsigned char>(c.peek()))) {
    c.fail("expected an atom name");
  }
  while (!c.done() && (std::isalnum(static_cast<unsigned char>(c.peek())) || c.peek() == '_')) {
    ++c.pos;
  }
  return c.text.substr(start, c.pos - start);
}

int read_int(Cursor& c) {
  size_t start = c.pos;
  bool neg = false;
  if (c.at('-')) {
    neg = true;
    ++c.pos;
  }
  if (c.done() || !std::isdigit(static_cast<unsigned char>(c.peek()))) {
    c.fail("expected an integer degree");
  }
  long v = 0;
  while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
    v = v * 10 + (c.peek() - '0');
    if (v > 1000000) throw ParseError("degree out of range", start);
    ++c.pos;
  }
  return static_cast<int>(neg ? -v : v);
}

Word parse_terms(Cursor& c, bool inside_pi);

int read_suffixes(Cursor& c) {
  int degree = 0;
  while (c.at('^')) {
    ++c.pos;
    if (c.at('(')) {
      ++c.pos;
      degree += read_int(c);
      if (!c.at(')')) c.fail("expected ')' after degree");
      ++c.pos;
    } else if (c.at('r')) {
      ++c.pos;
      if (c.at('r')) {
        ++c.pos;
        degree += 2;
      } else {
        degree += 1;
      }
    } else if (c.at('l')) {
      ++c.pos;
      if (c.at('l')) {
        ++c.pos;
        degree -= 2;
      } else {
        degree -= 1;
      }
    } else {
      c.fail("expected r, l, or (k) after '^'");
    }
  }
  return degree;
}

Term parse_term(Cursor& c) {
  if (!c.done() && std::isalpha(static_cast<unsigned char>(c.peek()))) {
    size_t name_pos = c.pos;
    std::string name = read_name(c);
    if (name == "pi") {
      if (!c.at('(')) throw ParseError("'pi' is reserved; expected '(' after it", c.pos);
      ++c.pos;
      Word inner = parse_terms(c, true);
      if (!c.at(')')) c.fail("expected ')' closing pi(...)");
      if (inner.empty()) throw ParseError("pi content must be non-empty", name_pos);
      ++c.pos;
      return Term::pi(std::move(inner), read_suffixes(c));
    }
    return Term::simple(std::move(name), read_suffixes(c));
  }
  c.fail("expected a term");
}

// Parses a space-separated term list.  Standalone "1" denotes the empty
// word; it cannot be mixed with other terms.
Word parse_terms(Cursor& c, bool inside_pi) {
  c.skip_spaces();
  if (c.at('1')) {
    size_t one_pos = c.pos;
    ++c.pos;
    c.skip_spaces();
    bool end = inside_pi ? (c.done() || c.at(')')) : c.done();
    if (!end) throw ParseError("'1' denotes the empty word and stands alone", one_pos);
    return {};
  }
  Word out;
  while (true) {
    out.push_back(parse_term(c));
    size_t before = c.pos;
    c.skip_spaces();
    if (c.done() || c.at(')')) break;
    if (c.pos == before) c.fail("expected a space between terms");
  }
  return out;
}

}  // namespace

Word parse_word(const std::string& text) {
  Cursor c{text};
  c.skip_spaces();
  if (c.done()) throw ParseError("empty input; write '1' for the empty word", 0);
  Word w = parse_terms(c, false);
  c.skip_spaces();
  if (!c.done()) c.fail("unexpected trailing input");
  return w;
}

}  // namespace pregroup
