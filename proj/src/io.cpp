#include "spines/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "spines/errors.hpp"

namespace spines {

namespace {

// ---------------------------------------------------------------------------
// Cursor with 1-based line/column tracking.  All parsers run on one of these
// so every rejection can point at the offending character.

struct Cur {
  const std::string& s;
  size_t p = 0;
  int line = 1;
  int col = 1;

  bool eof() const { return p >= s.size(); }
  char peek() const { return eof() ? '\0' : s[p]; }
  char next() {
    char c = s[p++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
};

[[noreturn]] void fail(const Cur& c, const std::string& msg) {
  throw ParseError(c.line, c.col, msg);
}

// Spaces and tabs only; newlines are significant in the line-oriented formats.
void skip_spaces(Cur& c) {
  while (!c.eof() && (c.peek() == ' ' || c.peek() == '\t' || c.peek() == '\r')) c.next();
}

// Any whitespace including newlines.
void skip_all_ws(Cur& c) {
  while (!c.eof() && std::isspace(static_cast<unsigned char>(c.peek()))) c.next();
}

bool looking_at(const Cur& c, const char* tok) {
  return c.s.compare(c.p, std::char_traits<char>::length(tok), tok) == 0;
}

bool eat(Cur& c, const char* tok) {
  if (!looking_at(c, tok)) return false;
  for (const char* q = tok; *q; ++q) c.next();
  return true;
}

void expect(Cur& c, const char* tok) {
  if (!eat(c, tok)) fail(c, std::string("expected '") + tok + "'");
}

void expect_line_end(Cur& c) {
  skip_spaces(c);
  if (c.eof()) return;
  if (c.peek() != '\n') fail(c, "unexpected trailing text");
  c.next();
}

bool is_digit(char ch) { return ch >= '0' && ch <= '9'; }

long parse_long(Cur& c) {
  skip_spaces(c);
  bool neg = false;
  if (c.peek() == '-') {
    neg = true;
    c.next();
  }
  if (!is_digit(c.peek())) fail(c, "expected an integer");
  long v = 0;
  while (is_digit(c.peek())) {
    v = v * 10 + (c.next() - '0');
    if (v > (1L << 60)) fail(c, "integer out of range");
  }
  return neg ? -v : v;
}

Int parse_int_big(Cur& c) {
  skip_spaces(c);
  bool neg = false;
  if (c.peek() == '-') {
    neg = true;
    c.next();
  }
  if (!is_digit(c.peek())) fail(c, "expected an integer");
  std::string digits;
  while (is_digit(c.peek())) digits.push_back(c.next());
  Int v(digits);
  return neg ? -v : v;
}

// ---------------------------------------------------------------------------
// Group specs.

GroupSpec parse_group_spec(Cur& c) {
  skip_spaces(c);
  GroupSpec g;
  if (eat(c, "trivial")) {
    g = trivial_group();
  } else if (eat(c, "free-abelian")) {
    expect(c, "(");
    long n = parse_long(c);
    skip_spaces(c);
    expect(c, ")");
    g = free_abelian_group(static_cast<int>(n));
  } else if (eat(c, "free")) {
    expect(c, "(");
    long n = parse_long(c);
    skip_spaces(c);
    expect(c, ")");
    g = free_group(static_cast<int>(n));
  } else if (eat(c, "Z/")) {
    long n = parse_long(c);
    g = finite_cyclic_group(static_cast<int>(n));
  } else if (eat(c, "finite-cyclic")) {
    expect(c, "(");
    long n = parse_long(c);
    skip_spaces(c);
    expect(c, ")");
    g = finite_cyclic_group(static_cast<int>(n));
  } else {
    fail(c, "expected a group: trivial, free(n), free-abelian(n) or Z/n");
  }
  g.check();
  return g;
}

// ---------------------------------------------------------------------------
// Words over the coefficient group.  The single generator of Z/n is written
// t; free and free-abelian generators are written x1..xn.

bool at_group_generator(const Cur& c, const GroupSpec& g) {
  if (g.kind == GroupKind::FiniteCyclic) return c.peek() == 't';
  if (g.kind == GroupKind::Free || g.kind == GroupKind::FreeAbelian)
    return c.peek() == 'x' && c.p + 1 < c.s.size() && is_digit(c.s[c.p + 1]);
  return false;
}

long long parse_exponent(Cur& c) {
  if (!eat(c, "^")) return 1;
  bool neg = false;
  if (c.peek() == '-') {
    neg = true;
    c.next();
  }
  if (!is_digit(c.peek())) fail(c, "expected an exponent");
  long long e = 0;
  while (is_digit(c.peek())) {
    e = e * 10 + (c.next() - '0');
    if (e > (1LL << 60)) fail(c, "exponent out of range");
  }
  return neg ? -e : e;
}

// One generator-power factor, e.g. x2^-1 or t^3.
std::pair<int, long long> parse_group_factor(Cur& c, const GroupSpec& g) {
  int idx = 0;
  if (g.kind == GroupKind::FiniteCyclic) {
    expect(c, "t");
    idx = 1;
  } else {
    expect(c, "x");
    if (!is_digit(c.peek())) fail(c, "expected a generator index");
    long v = 0;
    while (is_digit(c.peek())) {
      v = v * 10 + (c.next() - '0');
      if (v > 1000000) fail(c, "generator index out of range");
    }
    idx = static_cast<int>(v);
  }
  return {idx, parse_exponent(c)};
}

// A product of factors joined by '*' or plain juxtaposition; never crosses a
// newline.  `1` is accepted for the identity by the callers that allow it.
GroupWord parse_group_word_factors(Cur& c, const GroupSpec& g) {
  RawLetters letters;
  for (;;) {
    auto [idx, e] = parse_group_factor(c, g);
    letters.emplace_back(idx, e);
    skip_spaces(c);
    if (eat(c, "*")) {
      skip_spaces(c);
      continue;
    }
    if (at_group_generator(c, g)) continue;
    break;
  }
  return normalize_word(g, letters);
}

GroupWord parse_group_word(Cur& c, const GroupSpec& g) {
  skip_spaces(c);
  if (c.peek() == '1') {
    c.next();
    return word_identity(g);
  }
  if (!at_group_generator(c, g)) fail(c, "expected a group word");
  return parse_group_word_factors(c, g);
}

// ---------------------------------------------------------------------------
// Ring elements: signed sums of integer-times-word terms.

RingElement parse_term(Cur& c, const GroupSpec& g) {
  skip_spaces(c);
  if (is_digit(c.peek())) {
    Int coeff = parse_int_big(c);
    skip_spaces(c);
    if (eat(c, "*")) {
      skip_spaces(c);
      if (!at_group_generator(c, g)) fail(c, "expected a group word after '*'");
      return ring_from_word(g, parse_group_word_factors(c, g), coeff);
    }
    if (at_group_generator(c, g))
      return ring_from_word(g, parse_group_word_factors(c, g), coeff);
    return ring_from_int(g, coeff);
  }
  if (at_group_generator(c, g)) return ring_from_word(g, parse_group_word_factors(c, g));
  fail(c, "expected a term");
}

RingElement parse_element(Cur& c, const GroupSpec& g) {
  skip_spaces(c);
  int sign = 1;
  if (c.peek() == '-') {
    c.next();
    sign = -1;
    skip_spaces(c);
  }
  RingElement out = ring_zero(g);
  for (;;) {
    RingElement t = parse_term(c, g);
    out = sign > 0 ? ring_add(out, t) : ring_sub(out, t);
    skip_spaces(c);
    if (c.peek() == '+') {
      c.next();
      sign = 1;
    } else if (c.peek() == '-') {
      c.next();
      sign = -1;
    } else {
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matrix rows: [entry, entry, ...] with the expected column count known.

RingMat parse_ring_rows(Cur& c, const GroupSpec& g, long rows, long cols) {
  RingMat m(g, rows, cols);
  for (long r = 0; r < rows; ++r) {
    skip_all_ws(c);
    expect(c, "[");
    for (long j = 0; j < cols; ++j) {
      m.at(r, j) = parse_element(c, g);
      skip_spaces(c);
      if (j + 1 < cols) expect(c, ",");
    }
    skip_spaces(c);
    expect(c, "]");
    expect_line_end(c);
  }
  return m;
}

std::string print_ring_row(const RingMat& m, long r) {
  std::string out = "[";
  for (long j = 0; j < m.cols; ++j) {
    if (j) out += ", ";
    out += print_ring_element(m.at(r, j));
  }
  out += "]";
  return out;
}

// ---------------------------------------------------------------------------
// Complex bodies, shared by the complex and chain map formats.

BasedComplex parse_complex_body(Cur& c) {
  skip_all_ws(c);
  expect(c, "ring:");
  GroupSpec g = parse_group_spec(c);
  expect_line_end(c);

  skip_all_ws(c);
  expect(c, "ranks:");
  std::vector<long> ranks;
  for (;;) {
    skip_spaces(c);
    if (!is_digit(c.peek()) && c.peek() != '-') break;
    long r = parse_long(c);
    if (r < 0) fail(c, "ranks must be nonnegative");
    ranks.push_back(r);
  }
  if (ranks.empty()) fail(c, "expected at least one rank");
  expect_line_end(c);

  std::map<int, RingMat> bnd;
  for (;;) {
    skip_all_ws(c);
    if (!looking_at(c, "boundary ")) break;
    eat(c, "boundary ");
    long k = parse_long(c);
    skip_spaces(c);
    expect(c, ":");
    expect_line_end(c);
    if (k < 1 || k >= static_cast<long>(ranks.size()))
      fail(c, "boundary degree out of range");
    const long rows = ranks[static_cast<size_t>(k - 1)];
    const long cols = ranks[static_cast<size_t>(k)];
    bnd[static_cast<int>(k)] = parse_ring_rows(c, g, rows, cols);
  }
  return make_complex(g, std::move(ranks), std::move(bnd));
}

std::string print_complex_body(const BasedComplex& C) {
  std::string out = "ring: " + print_group(C.ring) + "\n";
  out += "ranks:";
  for (long r : C.ranks) out += " " + std::to_string(r);
  out += "\n";
  for (int k = 1; k <= C.top_degree(); ++k) {
    if (C.rank(k) == 0 || C.rank(k - 1) == 0) continue;
    out += "boundary " + std::to_string(k) + ":\n";
    const RingMat& m = C.boundary(k);
    for (long r = 0; r < m.rows; ++r) out += print_ring_row(m, r) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Free words on presentation generators; spelling is preserved, so parsing
// does not merge adjacent factors.

FreeWord parse_free_word_at(Cur& c) {
  skip_spaces(c);
  if (c.peek() == '1') {
    c.next();
    return FreeWord{};
  }
  FreeWord w;
  for (;;) {
    expect(c, "x");
    if (!is_digit(c.peek())) fail(c, "expected a generator index");
    long v = 0;
    while (is_digit(c.peek())) {
      v = v * 10 + (c.next() - '0');
      if (v > 1000000) fail(c, "generator index out of range");
    }
    w.syllables.emplace_back(static_cast<int>(v), parse_exponent(c));
    skip_spaces(c);
    if (eat(c, "*")) {
      skip_spaces(c);
      continue;
    }
    if (c.peek() == 'x' && c.p + 1 < c.s.size() && is_digit(c.s[c.p + 1])) continue;
    break;
  }
  return w;
}

// ---------------------------------------------------------------------------
// Presentations.  line_mode keeps the grammar on a single line (for move
// scripts); file mode lets sections sit on separate lines.

void skip_gap(Cur& c, bool line_mode) {
  if (line_mode)
    skip_spaces(c);
  else
    skip_all_ws(c);
}

Presentation2Complex parse_presentation_body(Cur& c, bool line_mode) {
  skip_gap(c, line_mode);
  expect(c, "gens:");
  int n = 0;
  for (;;) {
    skip_spaces(c);
    if (c.peek() != 'x') break;
    c.next();
    if (!is_digit(c.peek())) fail(c, "expected a generator index");
    long v = 0;
    while (is_digit(c.peek())) v = v * 10 + (c.next() - '0');
    if (v != n + 1) fail(c, "generators must be x1..xn in order");
    n = static_cast<int>(v);
  }
  skip_gap(c, line_mode);
  expect(c, ";");

  skip_gap(c, line_mode);
  expect(c, "pi:");
  GroupSpec pi = parse_group_spec(c);
  skip_gap(c, line_mode);
  expect(c, ";");

  skip_gap(c, line_mode);
  expect(c, "map:");
  std::vector<GroupWord> pi_map;
  for (int i = 1; i <= n; ++i) {
    skip_gap(c, line_mode);
    expect(c, "x");
    skip_spaces(c);
    long v = 0;
    if (!is_digit(c.peek())) fail(c, "expected a generator index");
    while (is_digit(c.peek())) v = v * 10 + (c.next() - '0');
    if (v != i) fail(c, "map entries must cover x1..xn in order");
    skip_spaces(c);
    expect(c, "->");
    pi_map.push_back(parse_group_word(c, pi));
    skip_spaces(c);
    if (i < n) expect(c, ",");
  }
  skip_gap(c, line_mode);
  expect(c, ";");

  skip_gap(c, line_mode);
  expect(c, "rels:");
  std::vector<FreeWord> rels;
  skip_spaces(c);
  const bool more = line_mode ? !(c.eof() || c.peek() == '\n') : (skip_all_ws(c), !c.eof());
  if (more) {
    for (;;) {
      skip_gap(c, line_mode);
      rels.push_back(parse_free_word_at(c));
      skip_spaces(c);
      if (!eat(c, ",")) break;
    }
  }
  return make_presentation(n, std::move(rels), pi, std::move(pi_map));
}

std::string print_presentation_line(const Presentation2Complex& P) {
  std::string out = "gens:";
  for (int i = 1; i <= P.free_rank; ++i) out += " x" + std::to_string(i);
  out += "; pi: " + print_group(P.pi) + "; map:";
  for (int i = 1; i <= P.free_rank; ++i) {
    out += (i == 1 ? " " : ", ");
    out += "x" + std::to_string(i) + "->" + print_word(P.pi, P.pi_map[static_cast<size_t>(i - 1)]);
  }
  out += "; rels:";
  for (size_t i = 0; i < P.relators.size(); ++i) {
    out += (i == 0 ? " " : ", ");
    out += print_free_word(P.relators[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Moves.

long parse_rel_index(Cur& c) {
  skip_spaces(c);
  expect(c, "r");
  long v = parse_long(c);
  if (v < 1) fail(c, "relator indices are 1-based");
  return v - 1;
}

PresMove parse_move_line(Cur& c) {
  PresMove m;
  if (eat(c, "expand")) {
    m.kind = PresMoveKind::Expand;
    skip_spaces(c);
    m.word = parse_free_word_at(c);
  } else if (eat(c, "collapse")) {
    m.kind = PresMoveKind::Collapse;
    skip_spaces(c);
    expect(c, "x");
    long v = parse_long(c);
    if (v < 1) fail(c, "generator indices are 1-based");
    m.gen = static_cast<int>(v);
    m.rel = parse_rel_index(c);
  } else if (eat(c, "invert")) {
    m.kind = PresMoveKind::InvertRelator;
    m.rel = parse_rel_index(c);
  } else if (eat(c, "conjugate")) {
    m.kind = PresMoveKind::ConjugateRelator;
    m.rel = parse_rel_index(c);
    skip_spaces(c);
    m.word = parse_free_word_at(c);
  } else if (eat(c, "multiply")) {
    m.kind = PresMoveKind::MultiplyRelator;
    m.rel = parse_rel_index(c);
    m.rel2 = parse_rel_index(c);
  } else if (eat(c, "homological")) {
    m.kind = PresMoveKind::HomologicalChange;
    m.rel = parse_rel_index(c);
    skip_spaces(c);
    m.word = parse_free_word_at(c);
  } else if (eat(c, "stabpair")) {
    m.kind = PresMoveKind::StabilizePair;
  } else if (eat(c, "permute")) {
    m.kind = PresMoveKind::PermuteRelators;
    for (;;) {
      skip_spaces(c);
      if (!is_digit(c.peek())) break;
      long v = parse_long(c);
      if (v < 1) fail(c, "permutation entries are 1-based");
      m.perm.push_back(v - 1);
    }
    if (m.perm.empty()) fail(c, "expected a permutation");
  } else {
    fail(c, "unknown move");
  }
  expect_line_end(c);
  return m;
}

std::string print_move_line(const PresMove& m) {
  switch (m.kind) {
    case PresMoveKind::Expand:
      return "expand " + print_free_word(m.word);
    case PresMoveKind::Collapse:
      return "collapse x" + std::to_string(m.gen) + " r" + std::to_string(m.rel + 1);
    case PresMoveKind::InvertRelator:
      return "invert r" + std::to_string(m.rel + 1);
    case PresMoveKind::ConjugateRelator:
      return "conjugate r" + std::to_string(m.rel + 1) + " " + print_free_word(m.word);
    case PresMoveKind::MultiplyRelator:
      return "multiply r" + std::to_string(m.rel + 1) + " r" + std::to_string(m.rel2 + 1);
    case PresMoveKind::HomologicalChange:
      return "homological r" + std::to_string(m.rel + 1) + " " + print_free_word(m.word);
    case PresMoveKind::StabilizePair:
      return "stabpair";
    case PresMoveKind::PermuteRelators: {
      std::string out = "permute";
      for (long v : m.perm) out += " " + std::to_string(v + 1);
      return out;
    }
  }
  throw InvalidInputError("unknown move kind");
}

}  // namespace

// ---------------------------------------------------------------------------
// Public printers and parsers.

std::string print_group(const GroupSpec& g) {
  switch (g.kind) {
    case GroupKind::Trivial:
      return "trivial";
    case GroupKind::Free:
      return "free(" + std::to_string(g.param) + ")";
    case GroupKind::FreeAbelian:
      return "free-abelian(" + std::to_string(g.param) + ")";
    case GroupKind::FiniteCyclic:
      return "Z/" + std::to_string(g.param);
  }
  throw InvalidInputError("unknown group kind");
}

GroupSpec parse_group(const std::string& s) {
  Cur c{s};
  GroupSpec g = parse_group_spec(c);
  skip_all_ws(c);
  if (!c.eof()) fail(c, "unexpected trailing text");
  return g;
}

std::string print_word(const GroupSpec& g, const GroupWord& w) {
  if (w.is_identity()) return "1";
  std::string out;
  for (size_t i = 0; i < w.syllables.size(); ++i) {
    const auto& [gen, e] = w.syllables[i];
    if (i) out += "*";
    out += g.kind == GroupKind::FiniteCyclic ? "t" : "x" + std::to_string(gen);
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

std::string print_ring_element(const RingElement& a) {
  if (a.terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, coeff] : a.terms) {
    const bool neg = coeff < 0;
    const Int mag = int_abs(coeff);
    std::string body;
    if (w.is_identity())
      body = mag.str();
    else if (mag == 1)
      body = print_word(a.group, w);
    else
      body = mag.str() + "*" + print_word(a.group, w);
    if (first) {
      out += neg ? "-" + body : body;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + body;
    }
  }
  return out;
}

RingElement parse_ring_element(const GroupSpec& g, const std::string& s) {
  Cur c{s};
  RingElement e = parse_element(c, g);
  skip_all_ws(c);
  if (!c.eof()) fail(c, "unexpected trailing text");
  return e;
}

std::string print_free_word(const FreeWord& w) {
  if (w.syllables.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < w.syllables.size(); ++i) {
    const auto& [gen, e] = w.syllables[i];
    if (i) out += "*";
    out += "x" + std::to_string(gen);
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

FreeWord parse_free_word(const std::string& s) {
  Cur c{s};
  FreeWord w = parse_free_word_at(c);
  skip_all_ws(c);
  if (!c.eof()) fail(c, "unexpected trailing text");
  return w;
}

std::string print_int_matrix(const IntMat& m) {
  std::string out = "matrix " + std::to_string(m.rows) + " x " + std::to_string(m.cols) + "\n";
  for (long r = 0; r < m.rows; ++r) {
    out += "[";
    for (long j = 0; j < m.cols; ++j) {
      if (j) out += ", ";
      out += m.at(r, j).str();
    }
    out += "]\n";
  }
  return out;
}

IntMat parse_int_matrix(const std::string& text) {
  Cur c{text};
  skip_all_ws(c);
  expect(c, "matrix");
  long rows = parse_long(c);
  skip_spaces(c);
  expect(c, "x");
  long cols = parse_long(c);
  if (rows < 0 || cols < 0) fail(c, "matrix dimensions must be nonnegative");
  expect_line_end(c);
  IntMat m(rows, cols);
  for (long r = 0; r < rows; ++r) {
    skip_all_ws(c);
    expect(c, "[");
    for (long j = 0; j < cols; ++j) {
      m.at(r, j) = parse_int_big(c);
      skip_spaces(c);
      if (j + 1 < cols) expect(c, ",");
    }
    skip_spaces(c);
    expect(c, "]");
    expect_line_end(c);
  }
  skip_all_ws(c);
  if (!c.eof()) fail(c, "unexpected trailing text");
  return m;
}

std::string print_complex(const BasedComplex& C) { return print_complex_body(C); }

BasedComplex parse_complex(const std::string& text) {
  Cur c{text};
  BasedComplex C = parse_complex_body(c);
  skip_all_ws(c);
  if (!c.eof()) fail(c, "unexpected trailing text");
  return C;
}

std::string print_chain_map(const ChainMap& f) {
  std::string out = "source:\n" + print_complex_body(f.source);
  out += "target:\n" + print_complex_body(f.target);
  for (const auto& [k, m] : f.components) {
    out += "component " + std::to_string(k) + ":\n";
    for (long r = 0; r < m.rows; ++r) out += print_ring_row(m, r) + "\n";
  }
  return out;
}

ChainMap parse_chain_map(const std::string& text) {
  Cur c{text};
  skip_all_ws(c);
  expect(c, "source:");
  expect_line_end(c);
  BasedComplex source = parse_complex_body(c);
  skip_all_ws(c);
  expect(c, "target:");
  expect_line_end(c);
  BasedComplex target = parse_complex_body(c);
  if (!(source.ring == target.ring)) fail(c, "source and target rings differ");
  std::map<int, RingMat> comps;
  for (;;) {
    skip_all_ws(c);
    if (!looking_at(c, "component ")) break;
    eat(c, "component ");
    long k = parse_long(c);
    skip_spaces(c);
    expect(c, ":");
    expect_line_end(c);
    if (k < 0) fail(c, "component degree out of range");
    comps[static_cast<int>(k)] =
        parse_ring_rows(c, source.ring, target.rank(static_cast<int>(k)),
                        source.rank(static_cast<int>(k)));
  }
  skip_all_ws(c);
  if (!c.eof()) fail(c, "unexpected trailing text");
  return make_chain_map(source, target, comps);
}

std::string print_presentation(const Presentation2Complex& P) {
  return print_presentation_line(P) + "\n";
}

Presentation2Complex parse_presentation(const std::string& text) {
  Cur c{text};
  Presentation2Complex P = parse_presentation_body(c, false);
  skip_all_ws(c);
  if (!c.eof()) fail(c, "unexpected trailing text");
  return P;
}

std::string print_move_sequence(const MoveSequence& s) {
  std::string out = "presentation: " + print_presentation_line(s.initial) + "\n";
  for (const PresMove& m : s.moves) out += print_move_line(m) + "\n";
  return out;
}

MoveSequence parse_move_sequence(const std::string& text) {
  Cur c{text};
  skip_all_ws(c);
  expect(c, "presentation:");
  MoveSequence s;
  s.initial = parse_presentation_body(c, true);
  expect_line_end(c);
  for (;;) {
    skip_all_ws(c);
    if (c.eof()) break;
    s.moves.push_back(parse_move_line(c));
  }
  return s;
}

std::string print_witness_move(const GroupSpec& g, const WitnessMove& m) {
  (void)g;  // the scalar carries its own group; kept for parse symmetry
  switch (m.kind) {
    case WitnessMoveKind::Stabilize:
      return "stab " + std::to_string(m.degree);
    case WitnessMoveKind::Destabilize:
      return "destab " + std::to_string(m.degree);
    case WitnessMoveKind::Elementary: {
      std::string out = m.row_flavor ? "elemrow " : "elem ";
      out += std::to_string(m.degree) + " " + std::to_string(m.i + 1) + " " +
             std::to_string(m.j + 1) + " " + print_ring_element(m.scalar);
      return out;
    }
    case WitnessMoveKind::UnitDiagonal:
      return "unit " + std::to_string(m.degree) + " " + std::to_string(m.i + 1) + " " +
             print_ring_element(m.scalar);
    case WitnessMoveKind::Permutation: {
      std::string out = "perm " + std::to_string(m.degree);
      for (long v : m.perm) out += " " + std::to_string(v + 1);
      return out;
    }
  }
  throw InvalidInputError("unknown witness move kind");
}

WitnessMove parse_witness_move(const GroupSpec& g, const std::string& line) {
  Cur c{line};
  skip_spaces(c);
  WitnessMove m;
  if (eat(c, "stab")) {
    m = stab_move(static_cast<int>(parse_long(c)));
  } else if (eat(c, "destab")) {
    m = destab_move(static_cast<int>(parse_long(c)));
  } else if (eat(c, "elemrow")) {
    int deg = static_cast<int>(parse_long(c));
    long i = parse_long(c);
    long j = parse_long(c);
    if (i < 1 || j < 1) fail(c, "indices are 1-based");
    skip_spaces(c);
    m = elem_row_move(deg, i - 1, j - 1, parse_element(c, g));
  } else if (eat(c, "elem")) {
    int deg = static_cast<int>(parse_long(c));
    long i = parse_long(c);
    long j = parse_long(c);
    if (i < 1 || j < 1) fail(c, "indices are 1-based");
    skip_spaces(c);
    m = elem_move(deg, i - 1, j - 1, parse_element(c, g));
  } else if (eat(c, "unit")) {
    int deg = static_cast<int>(parse_long(c));
    long i = parse_long(c);
    if (i < 1) fail(c, "indices are 1-based");
    skip_spaces(c);
    m = unit_move(deg, i - 1, parse_element(c, g));
  } else if (eat(c, "perm")) {
    int deg = static_cast<int>(parse_long(c));
    std::vector<long> p;
    for (;;) {
      skip_spaces(c);
      if (!is_digit(c.peek())) break;
      long v = parse_long(c);
      if (v < 1) fail(c, "permutation entries are 1-based");
      p.push_back(v - 1);
    }
    m = perm_move(deg, std::move(p));
  } else {
    fail(c, "unknown witness move");
  }
  skip_all_ws(c);
  if (!c.eof()) fail(c, "unexpected trailing text");
  return m;
}

std::string print_homology(const HomologySummary& h) {
  std::string out;
  for (int k = 0; k <= h.top_degree(); ++k) {
    out += "H" + std::to_string(k) + " = ";
    std::string parts;
    for (const Int& d : h.torsion_at(k)) {
      if (!parts.empty()) parts += " + ";
      parts += "Z/" + d.str();
    }
    const long b = h.betti_at(k);
    if (b > 0) {
      if (!parts.empty()) parts += " + ";
      parts += b == 1 ? "Z" : "Z^" + std::to_string(b);
    }
    out += parts.empty() ? "0" : parts;
    out += "\n";
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInputError("cannot write file: " + path);
  out << content;
  if (!out) throw InvalidInputError("cannot write file: " + path);
}

}  // namespace spines
