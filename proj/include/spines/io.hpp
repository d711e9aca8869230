#pragma once

#include <string>

#include "spines/complex.hpp"
#include "spines/homology.hpp"
#include "spines/int_matrix.hpp"
#include "spines/presentation.hpp"
#include "spines/witness.hpp"

namespace spines {

// Text formats.  Printers are deterministic (term order is the canonical
// word order, sections always appear in the same order) and every parser
// accepts exactly what the printer emits plus surplus whitespace, so
// parse(print(v)) == v and print(parse(s)) == s for printed s.  Parsers
// throw ParseError with a 1-based line and column.

// Group specs: trivial, free(n), free-abelian(n), Z/n.  parse_group also
// accepts finite-cyclic(n) as an alias for Z/n.
std::string print_group(const GroupSpec& g);
GroupSpec parse_group(const std::string& s);

// Group words: 1 for the identity, t/t^e over Z/n, x1*x2^-1 otherwise.
std::string print_word(const GroupSpec& g, const GroupWord& w);

// Ring elements: signed sums like -1 + 2*t or 3 - x1*x2.  The empty sum
// prints as 0.  parse_ring_element consumes the whole string.
std::string print_ring_element(const RingElement& a);
RingElement parse_ring_element(const GroupSpec& g, const std::string& s);

// Words in the free group on presentation generators, spelling preserved:
// x1^2*x2 stays one syllable per factor.  1 is the empty word.
std::string print_free_word(const FreeWord& w);
FreeWord parse_free_word(const std::string& s);

// Integer matrices:
//   matrix 2 x 3
//   [1, 2, 3]
//   [4, 5, 6]
std::string print_int_matrix(const IntMat& m);
IntMat parse_int_matrix(const std::string& text);

// Complexes:
//   ring: Z/2
//   ranks: 1 1 1
//   boundary 1:
//   [-1 + t]
//   boundary 2:
//   [1 + t]
// Boundary sections appear for 1 <= k <= top with both ranks positive; all
// other boundaries are zero-shaped and implied by the ranks.
std::string print_complex(const BasedComplex& C);
BasedComplex parse_complex(const std::string& text);

// Chain maps carry both endpoints inline:
//   source:
//   <complex>
//   target:
//   <complex>
//   component 0:
//   [1]
// Components omitted are zero.
std::string print_chain_map(const ChainMap& f);
ChainMap parse_chain_map(const std::string& text);

// Presentations, one line:
//   gens: x1 x2; pi: Z/2; map: x1->t, x2->1; rels: x1^2, x1*x2*x1^-1*x2^-1
std::string print_presentation(const Presentation2Complex& P);
Presentation2Complex parse_presentation(const std::string& text);

// Move scripts: the starting presentation, then one move per line.
//   presentation: gens: x1; pi: trivial; map: x1->1; rels: x1^2, 1
//   invert r1
//   conjugate r1 x1
//   multiply r1 r2
//   homological r1 x1^2
//   expand x1*x1
//   collapse x2 r2
//   stabpair
//   permute 2 1
// Relator and generator indices are 1-based in the text.
std::string print_move_sequence(const MoveSequence& s);
MoveSequence parse_move_sequence(const std::string& text);

// One witness move per line, 1-based indices:
//   stab 1 / destab 1 / elem 2 1 2 -1 + t / elemrow 2 1 2 3 / unit 1 2 -t
//   / perm 1 2 1
std::string print_witness_move(const GroupSpec& g, const WitnessMove& m);
WitnessMove parse_witness_move(const GroupSpec& g, const std::string& line);

// Homology summaries, one line per degree: H1 = Z/2 + Z^2, H2 = 0, ...
std::string print_homology(const HomologySummary& h);

// Whole-file helpers used by the CLI.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace spines
